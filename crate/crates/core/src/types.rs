use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

/// Complex value in the working precision.
pub type ComplexScalar = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Ok,
    /// The true value is below the smallest normalized number; `value` is (0, 0).
    UnderflowZero,
    /// The true value exceeds the largest finite number; `value` is unspecified.
    OverflowError,
}

/// Which method produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionTag {
    Series,
    LargeZ,
    LargeNu,
    LargeNuExtension,
    Recurrence,
    UnderflowShortcut,
}

impl RegionTag {
    pub const ALL: [RegionTag; 6] = [
        RegionTag::Series,
        RegionTag::LargeZ,
        RegionTag::LargeNu,
        RegionTag::LargeNuExtension,
        RegionTag::Recurrence,
        RegionTag::UnderflowShortcut,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RegionTag::Series => "Series",
            RegionTag::LargeZ => "LargeZ",
            RegionTag::LargeNu => "LargeNu",
            RegionTag::LargeNuExtension => "LargeNuExtension",
            RegionTag::Recurrence => "Recurrence",
            RegionTag::UnderflowShortcut => "UnderflowShortcut",
        }
    }
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RegionTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RegionTag::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown region tag {s:?}"))
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "Ok",
            Status::UnderflowZero => "UnderflowZero",
            Status::OverflowError => "OverflowError",
        })
    }
}

/// A function value together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub status: Status,
    pub region: RegionTag,
}

impl EvalResult {
    pub fn ok(value: Complex64, region: RegionTag) -> Self {
        EvalResult { value, status: Status::Ok, region }
    }

    /// `Ok`, or `UnderflowZero` when |value| is below e^{ln_rmin}.
    pub fn ok_or_underflow(value: Complex64, region: RegionTag, ln_rmin: f64) -> Self {
        if value.norm().ln() < ln_rmin {
            Self::underflow(region)
        } else {
            Self::ok(value, region)
        }
    }

    pub fn underflow(region: RegionTag) -> Self {
        EvalResult { value: Complex64::new(0.0, 0.0), status: Status::UnderflowZero, region }
    }

    pub fn overflow(region: RegionTag) -> Self {
        EvalResult { value: Complex64::new(f64::NAN, f64::NAN), status: Status::OverflowError, region }
    }

    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }

    /// Collapses the status into a `Result`: underflow maps to zero.
    pub fn into_value(self) -> Result<Complex64, crate::Error> {
        match self.status {
            Status::Ok | Status::UnderflowZero => Ok(self.value),
            Status::OverflowError => Err(crate::Error::Overflow),
        }
    }
}
