pub mod scalars;
pub mod linalg;
pub mod clifford;
pub mod ncrewrite;
pub mod report;
pub mod hopf;
pub mod presentations;
pub mod qclifford;
pub mod fierz;
pub mod suites;
