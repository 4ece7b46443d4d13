//! Finitely presented Steinberg groups: coset enumeration, exact word
//! problems, `K_2` computations and presentation checkers.

pub mod amalgam;
pub mod cache;
pub mod exact;
pub mod k2;
pub mod presentation;
pub mod relative;
pub mod star;
pub mod todd_coxeter;

pub use exact::StTable;
pub use k2::{k2_compute, kernel_report, KernelReport};
pub use presentation::{steinberg_presentation, Presentation, SteinbergPresentation};
pub use relative::{relative_subgroup_index, RelativeIndexReport};
pub use todd_coxeter::{enumerate_cosets, CosetTable, EnumerationCaps, DEFAULT_MAX_COSETS};
