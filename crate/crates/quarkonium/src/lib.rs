// Validation deliberately uses `!(x > 0.0)` so NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Quarkonium bound states from the Cornell potential with a smeared
//! spin-spin interaction, and a quantitative audit of the approximation
//! chain that turns it into a Kratzer-Fues problem.
//!
//! The crate has three layers:
//!
//! * [`model`] and [`solver`]: the potential models and a Numerov
//!   shooting eigensolver for the reduced radial equation.
//! * [`transform`] and [`closed_form`]: the inverse-coordinate transform,
//!   the quadratic inverse-power expansions, the assembled Kratzer-form
//!   coefficients and the analytic spectra (Coulomb, oscillator, Kratzer,
//!   and the closed-form Gamma spectrum). The end product of that chain is
//!   abbreviated OEA — *oscillator-expanded approximation* — throughout.
//! * [`audit`] and [`fit`]: side-by-side spectrum comparison with audit
//!   flags, and derivative-free parameter fitting to meson masses.
//!
//! The guide in `book/` walks through the same material chapter by
//! chapter; its code snippets compile as doc-tests of this crate.

pub mod audit;
pub mod closed_form;
pub mod error;
pub mod fit;
pub mod format;
pub mod model;
pub mod solver;
pub mod transform;

pub use error::{Error, Result};

// Keep the mdbook chapters compiling: every fenced Rust block in the guide
// runs as a doc-test of this crate.
#[cfg(doctest)]
mod book {
    macro_rules! book_chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    book_chapter!(introduction, "../../../book/src/introduction.md");
    book_chapter!(model, "../../../book/src/model.md");
    book_chapter!(solver, "../../../book/src/solver.md");
    book_chapter!(closed_form, "../../../book/src/closed_form.md");
    book_chapter!(approximation, "../../../book/src/approximation.md");
    book_chapter!(audit, "../../../book/src/audit.md");
    book_chapter!(fitting, "../../../book/src/fitting.md");
}
