#![no_std]
extern crate alloc;

pub mod arith;
pub mod coding;
pub mod construction;
pub mod entailment;
pub mod formula;
pub mod modal;
pub mod operators;
