//! The guide chapters, compiled so their listings run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/scales-and-capacities.md")]
pub mod scales_and_capacities {}
#[doc = include_str!("../../../book/src/sugeno-integral.md")]
pub mod sugeno_integral {}
#[doc = include_str!("../../../book/src/possibilistic.md")]
pub mod possibilistic {}
#[doc = include_str!("../../../book/src/axioms.md")]
pub mod axioms {}
#[doc = include_str!("../../../book/src/likelihood.md")]
pub mod likelihood {}
#[doc = include_str!("../../../book/src/synthesis.md")]
pub mod synthesis {}
#[doc = include_str!("../../../book/src/expected-utility.md")]
pub mod expected_utility {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
