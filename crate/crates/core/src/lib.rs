//! Bunched natural deduction for the relevant logics B and R.

pub mod annotate;
pub mod seqred;
pub mod subst;
pub mod syntax;
pub mod deriv;
pub mod harness;
pub mod translate;
pub mod exec;
pub mod acceptance;
