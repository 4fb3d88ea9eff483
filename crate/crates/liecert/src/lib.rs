//! Exact-arithmetic engine for certifying the surjectivity property
//! (property (P)) of distinguished non-regular nilpotent orbits in the
//! exceptional simple Lie algebras E6, E7, E8 and F4.
//!
//! The pipeline per orbit: build the algebra on a Chevalley basis, derive
//! the sl2-triple from the weighted Dynkin diagram, grade the centralizer
//! of e and its centre by ad h, assemble the parameter-linear matrices
//! whose everywhere-surjectivity is the certified property, and decide
//! them by exact rank or by a Groebner-basis origin-only test on the
//! maximal-minor ideal. Everything runs over exact rationals.

pub mod catalog;
pub mod liealg;
pub mod mvpoly;
pub mod propp;
pub mod ratmat;
pub mod report;
pub mod rootsystem;
pub mod run;
pub mod selftest;
pub mod sl2;
pub mod subalg;
