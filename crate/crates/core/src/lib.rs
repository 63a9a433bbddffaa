pub mod chronon;
pub mod dirac;
pub mod numeric;
pub mod opalg;
pub mod report;
pub mod snyder;
