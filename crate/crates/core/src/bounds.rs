//! Size guards for the enumerations.
//!
//! Limits are process-wide. A single override (the CLI `--bound` flag)
//! replaces every group-order limit at once.

use std::sync::atomic::{AtomicUsize, Ordering};

static OVERRIDE: AtomicUsize = AtomicUsize::new(0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest group whose full subgroup lattice is enumerated.
    pub subgroup_lattice: usize,
    /// Largest group whose automorphism group is searched.
    pub automorphisms: usize,
    /// Hard stop on the number of automorphisms collected.
    pub automorphism_count: usize,
    /// Largest group for degree-2 cohomology.
    pub h2: usize,
    /// Largest group for degree-3 cohomology.
    pub h3: usize,
    /// Largest fiber product used for bimodule classes.
    pub fiber_product: usize,
    /// Largest `G` for computations over the enveloping group `G × G`.
    pub enveloping: usize,
    /// Largest number of unknowns in a dense linear system.
    pub linear_unknowns: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            subgroup_lattice: 64,
            automorphisms: 64,
            automorphism_count: 200_000,
            h2: 32,
            h3: 16,
            fiber_product: 32,
            enveloping: 16,
            linear_unknowns: 20_000,
        }
    }
}

/// Current limits, taking the override into account.
pub fn bounds() -> Bounds {
    let mut b = Bounds::default();
    let o = OVERRIDE.load(Ordering::Relaxed);
    if o > 0 {
        b.subgroup_lattice = o;
        b.automorphisms = o;
        b.h2 = o;
        b.h3 = o;
        b.fiber_product = o;
        b.enveloping = o;
    }
    b
}

/// Replace every group-order limit by `limit`; 0 restores the defaults.
pub fn set_bound_override(limit: usize) {
    OVERRIDE.store(limit, Ordering::Relaxed);
}

pub(crate) fn check(what: &'static str, actual: usize, limit: usize) -> crate::Result<()> {
    if actual > limit {
        Err(crate::Error::BoundExceeded {
            what,
            limit,
            actual,
        })
    } else {
        Ok(())
    }
}
