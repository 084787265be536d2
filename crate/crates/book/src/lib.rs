//! The guide in `book/`, compiled as doctests so its listings stay in step
//! with the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/regions.md")]
pub mod regions {}
#[doc = include_str!("../../../book/src/series.md")]
pub mod series {}
#[doc = include_str!("../../../book/src/large-argument.md")]
pub mod large_argument {}
#[doc = include_str!("../../../book/src/large-order.md")]
pub mod large_order {}
#[doc = include_str!("../../../book/src/recurrence.md")]
pub mod recurrence {}
#[doc = include_str!("../../../book/src/results.md")]
pub mod results {}
#[doc = include_str!("../../../book/src/accuracy.md")]
pub mod accuracy {}
#[doc = include_str!("../../../book/src/benchmarking.md")]
pub mod benchmarking {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
