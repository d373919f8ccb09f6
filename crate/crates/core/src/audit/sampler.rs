use alloc::vec::Vec;

use rand::Rng;

use crate::algebra::Algebra;
use crate::budget::{derive_seed, seeded_rng, SeededRng};
use crate::field::FVector;
use crate::nilpotent::InnerAutomorphism;
use crate::algebra::Unitization;
use crate::subspace::Subspace;

/// How a sampled subspace is post-processed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum SampleKind {
    Raw,
    LieClosure,
    SubmoduleClosure,
    InvariantOrbit,
}

impl SampleKind {
    pub const ALL: [SampleKind; 4] = [
        SampleKind::Raw,
        SampleKind::LieClosure,
        SampleKind::SubmoduleClosure,
        SampleKind::InvariantOrbit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SampleKind::Raw => "raw",
            SampleKind::LieClosure => "lie-closure",
            SampleKind::SubmoduleClosure => "submodule-closure",
            SampleKind::InvariantOrbit => "invariant-orbit",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SamplerConfig {
    pub seed: u64,
    /// Samples per algebra and theorem.
    pub count: usize,
    /// Kinds a theorem may draw from; theorems ignore kinds they cannot use.
    pub kinds: Vec<SampleKind>,
    /// Redraws allowed when a theorem asks for a qualifying sample.
    pub retry_cap: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            seed: 0,
            count: 200,
            kinds: SampleKind::ALL.to_vec(),
            retry_cap: 50,
        }
    }
}

/// Deterministic stream of random subspaces for one (algebra, theorem) cell.
pub struct SubspaceSampler {
    rng: SeededRng,
}

impl SubspaceSampler {
    pub fn new(seed: u64, algebra_id: &str, theorem_id: &str) -> Self {
        let mut label = Vec::with_capacity(algebra_id.len() + theorem_id.len() + 1);
        label.extend_from_slice(algebra_id.as_bytes());
        label.push(0);
        label.extend_from_slice(theorem_id.as_bytes());
        SubspaceSampler {
            rng: seeded_rng(derive_seed(seed, &label)),
        }
    }

    pub fn rng(&mut self) -> &mut SeededRng {
        &mut self.rng
    }

    /// Span of `k` random vectors, `k` uniform in `0..=dim`.
    pub fn raw(&mut self, alg: &Algebra) -> Subspace {
        let k = self.rng.random_range(0..=alg.dim());
        let gens: Vec<FVector> = (0..k).map(|_| alg.random_element(&mut self.rng)).collect();
        Subspace::span(alg.field(), alg.dim(), &gens)
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.random_range(0..len)
    }
}

impl Algebra {
    /// Smallest superspace of `v` closed under `[w, ·]`.
    pub fn bracket_closure(&self, w: &Subspace, v: &Subspace) -> Subspace {
        let gens = w.basis_vectors();
        let mut cur = v.clone();
        loop {
            let mut rows = cur.basis().clone();
            for b in cur.basis_vectors() {
                for g in &gens {
                    rows.push_row(self.bracket_raw(g, &b).coords());
                }
            }
            let next = Subspace::from_matrix(&rows);
            if next.dim() == cur.dim() {
                return cur;
            }
            cur = next;
        }
    }

    /// Smallest Lie ideal containing `v`.
    pub fn lie_closure(&self, v: &Subspace) -> Subspace {
        self.bracket_closure(&self.whole_space(), v)
    }

    /// Smallest `[R, R]`-submodule containing `v`.
    pub fn submodule_closure(&self, v: &Subspace) -> Subspace {
        self.bracket_closure(&self.commutator_space(), v)
    }

    /// Smallest superspace of `v` invariant under `auts`.
    pub fn invariant_orbit_closure(&self, v: &Subspace, unit: &Unitization, auts: &[InnerAutomorphism]) -> Subspace {
        self.orbit_closure(v, unit, auts)
    }
}
