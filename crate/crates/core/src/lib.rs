//! Quotient-saturation toolkit: free-group words, Stallings graphs, colored
//! DAGs, realizations by normal subgroups with decidable word problems,
//! certificate checking, and the congruence extension property on finite groups.

#![no_std]

extern crate alloc;

pub mod cep;
pub mod dag;
pub mod quotient;
pub mod realize;
pub mod stallings;
pub mod verify;
pub mod word;
