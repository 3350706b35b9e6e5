//! Secrecy analysis and relay power allocation for a decode-and-forward
//! relay with a large antenna array.
//!
//! The crate has two halves that check each other:
//!
//! - [`analytics`] implements the closed forms: secrecy outage capacity,
//!   the feasibility condition on the relative path loss, interception
//!   probability, the optimal relay power for each objective, and the
//!   high-source-power asymptotics.
//! - [`montecarlo`] simulates the fading channels exactly (no hardening)
//!   and estimates the same quantities from samples, with a deterministic
//!   per-trial seeding contract.
//!
//! [`allocation`] wraps the power strategies behind one interface,
//! [`experiments`] runs the comparison sweeps and writes CSV + JSON
//! metadata, [`params`] holds the validated system constants, and
//! [`scenario`] defines the JSON schema consumed by the `relay-secrecy`
//! binary.

pub mod allocation;
pub mod analytics;
pub mod experiments;
pub mod montecarlo;
pub mod params;
pub mod scenario;
