pub mod field;
pub mod generators;
pub mod json;
pub mod leonard;
pub mod matrix;
pub mod parray;
