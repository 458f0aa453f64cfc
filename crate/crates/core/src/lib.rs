#![allow(clippy::mutable_key_type)]

pub mod error;
pub mod ff;
pub mod poly;
pub mod curve;
pub mod divpoly;
pub mod frobclass;
pub mod pattern;
pub mod oracle;
pub mod report;
pub mod cli;
