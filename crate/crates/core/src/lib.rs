pub mod algebra;
pub mod specfun;
pub mod classifier;
pub mod conformal;
pub mod evaluator;
pub mod maps;
