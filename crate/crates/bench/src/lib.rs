//! Synthetic workloads for the benchmarks and the test suites, plus
//! brute-force reference implementations to check the library against.
//!
//! The oracles work on plain index data (`usize` vertices, edge lists,
//! parent arrays) and share no code with `unires`.

pub mod generate;
pub mod oracle;

pub use generate::Instance;
