//! Fracture squares and homotopy groups of spherical lifts of perfect rings.

pub mod desc;
pub mod homotopy;
pub mod square;
pub mod stems;

pub use desc::{check_perfect, PerfectRingDesc, PerfectnessReport, PrimeVerdict, Window};
pub use homotopy::{spherical_homotopy, HomotopyGroup, HomotopySummand};
pub use square::{
    fracture_check_square, fracture_reconstruct, primes_up_to, render_element, verify_certificate, Reconstruction,
    SquareCertificate,
};
pub use stems::StemsTable;
