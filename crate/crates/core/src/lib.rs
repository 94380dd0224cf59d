//! Social ranking solutions over weak orders on coalitions, with the
//! independence axioms as executable checkers.
//!
//! See `book/` for a guided tour; its code blocks run as doc-tests.

pub mod axioms;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod order;
pub mod srs;
pub mod verify;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/weak-orders.md")]
    mod weak_orders {}
    #[doc = include_str!("../../../book/src/solutions.md")]
    mod solutions {}
    #[doc = include_str!("../../../book/src/axioms.md")]
    mod axioms {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
