pub mod exactnum;
pub mod gradedpoly;
pub mod truncseries;
pub mod curvegen;
pub mod linsolve;
pub mod formulas;
pub mod cli;
