//! Two-sided ideal lattices, prime and maximal ideals, exceptional primes and
//! the standard polynomial `s_4`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{projective_points, Algebra};
use crate::budget::seeded_rng;
use crate::error::Error;
use crate::field::{kernel, FMatrix, FVector};
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealRecord {
    pub subspace: Subspace,
    pub is_proper: bool,
    pub is_maximal: bool,
    pub is_prime: bool,
    /// Only set for prime ideals.
    pub is_exceptional: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    /// Sorted by dimension, then canonical basis.
    pub ideals: Vec<IdealRecord>,
    /// False when principal generators were sampled rather than enumerated.
    pub lattice_complete: bool,
}

impl SpectrumReport {
    pub fn primes(&self) -> impl Iterator<Item = &IdealRecord> {
        self.ideals.iter().filter(|r| r.is_prime)
    }

    pub fn maximal(&self) -> impl Iterator<Item = &IdealRecord> {
        self.ideals.iter().filter(|r| r.is_maximal)
    }

    pub fn proper(&self) -> impl Iterator<Item = &IdealRecord> {
        self.ideals.iter().filter(|r| r.is_proper)
    }

    /// A proper ideal contained in no ideal accepted by `accept`, if any.
    fn uncovered<'a>(&'a self, accept: impl Fn(&IdealRecord) -> bool + 'a) -> Option<&'a Subspace> {
        let targets: Vec<&IdealRecord> = self.ideals.iter().filter(|r| accept(r)).collect();
        self.proper()
            .find(|i| !targets.iter().any(|t| i.subspace.leq(&t.subspace)))
            .map(|i| &i.subspace)
    }

    /// Every proper ideal lies in a prime ideal.
    pub fn prime_cofinal(&self) -> bool {
        self.uncovered(|r| r.is_prime).is_none()
    }

    /// Every proper ideal lies in a maximal ideal.
    pub fn maximal_cofinal(&self) -> bool {
        self.uncovered(|r| r.is_maximal).is_none()
    }

    /// Every proper ideal lies in a non-exceptional prime ideal; the witness is
    /// a proper ideal that does not.
    pub fn nonexceptional_cofinal(&self) -> (bool, Option<Subspace>) {
        let w = self.uncovered(|r| r.is_prime && r.is_exceptional == Some(false)).cloned();
        (w.is_none(), w)
    }

    pub fn exceptional_prime_count(&self) -> usize {
        self.primes().filter(|r| r.is_exceptional == Some(true)).count()
    }
}

/// Outcome of the elementwise primality scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeScan {
    Prime,
    /// The ideal is the whole algebra.
    NotProper,
    /// Nonzero `x, y` in the quotient with `x Q̃ y = 0`.
    ZeroDivisors(FVector, FVector),
}

/// Cross-check of the direct non-exceptional cofinality scan against the
/// criterion `R = 2R + R̃S₄(R)R̃` together with prime cofinality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofinalityReport {
    pub holds: bool,
    pub witness: Option<Subspace>,
    pub prime_cofinal: bool,
    pub s4_criterion: bool,
    pub agree: bool,
}

/// The three implications between prime cofinality, idempotency and primality
/// of maximal ideals, checked on one algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MaxPrimeReport {
    pub prime_cofinal: bool,
    pub idempotent: bool,
    pub maximal_are_prime: bool,
    pub maximal_cofinal: bool,
    /// prime cofinal ⇒ idempotent
    pub cofinal_implies_idempotent: bool,
    /// idempotent ⇒ maximal ideals are prime
    pub idempotent_implies_maximal_prime: bool,
    /// maximal cofinal ∧ maximal ideals prime ⇒ prime cofinal
    pub maximal_prime_implies_cofinal: bool,
}

impl MaxPrimeReport {
    pub fn all_hold(&self) -> bool {
        self.maximal_cofinal
            && self.cofinal_implies_idempotent
            && self.idempotent_implies_maximal_prime
            && self.maximal_prime_implies_cofinal
    }
}

/// Signed sum of `x_σ(1) ⋯ x_σ(n)` over all permutations.
pub fn standard_polynomial(alg: &Algebra, xs: &[FVector]) -> FVector {
    let n = xs.len();
    let f = alg.field();
    let mut acc = alg.zero();
    let mut perm: Vec<usize> = (0..n).collect();
    // Heap's algorithm; each swap flips the sign.
    let mut c = vec![0usize; n];
    let mut sign_negative = false;
    let add_term = |perm: &[usize], negative: bool, acc: &mut FVector| {
        let mut prod = xs[perm[0]].clone();
        for &k in &perm[1..] {
            prod = alg.mul_raw(&prod, &xs[k]);
        }
        acc.add_scaled(if negative { f.neg(1) } else { 1 }, &prod);
    };
    if n == 0 {
        return acc;
    }
    add_term(&perm, sign_negative, &mut acc);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign_negative = !sign_negative;
            add_term(&perm, sign_negative, &mut acc);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    acc
}

impl Algebra {
    /// `S₄(R)`: the span of `s₄` on basis 4-tuples. Since `s₄` is multilinear and
    /// alternating, strictly increasing index tuples suffice.
    pub fn s4_span(&self) -> Subspace {
        let d = self.dim();
        let basis = self.basis();
        let mut gens = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    for l in k + 1..d {
                        let v = standard_polynomial(
                            self,
                            &[basis[i].clone(), basis[j].clone(), basis[k].clone(), basis[l].clone()],
                        );
                        if !v.is_zero() {
                            gens.push(v);
                        }
                    }
                }
            }
        }
        Subspace::span(self.field(), d, &gens)
    }

    /// `R = R²`.
    pub fn is_idempotent_ring(&self) -> bool {
        let r = self.whole_space();
        self.product_space(&r, &r) == r
    }

    /// `2R`: everything in odd characteristic, zero in characteristic 2.
    pub fn two_r(&self) -> Subspace {
        if self.p() == 2 {
            self.zero_space()
        } else {
            self.whole_space()
        }
    }

    /// `2R + R̃S₄(R)R̃`.
    pub fn s4_ideal(&self) -> Subspace {
        self.two_r().sum(&self.ideal_closure(&self.s4_span()))
    }

    /// Every two-sided ideal, as joins of principal ideals.
    ///
    /// Principal closures of one representative per line are enumerated when
    /// `p^dim <= budget`; otherwise `budget` generators are drawn with a fixed
    /// seed and the result is a partial lattice.
    pub fn ideal_lattice_spaces(&self, budget: u64) -> (Vec<Subspace>, bool) {
        let mut found: BTreeSet<Subspace> = BTreeSet::new();
        found.insert(self.zero_space());
        found.insert(self.whole_space());
        let complete = match projective_points(self.field(), self.dim(), budget) {
            Ok(points) => {
                for x in points {
                    found.insert(self.principal_ideal(&x));
                }
                true
            }
            Err(_) => {
                let mut rng = seeded_rng(0);
                for _ in 0..budget {
                    let x = self.random_element(&mut rng);
                    found.insert(self.principal_ideal(&x));
                }
                false
            }
        };
        // Close under sums.
        let mut all: Vec<Subspace> = found.iter().cloned().collect();
        let mut frontier = all.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for a in &frontier {
                for b in &all {
                    let s = a.sum(b);
                    if !found.contains(&s) {
                        found.insert(s.clone());
                        next.push(s);
                    }
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        let mut ideals: Vec<Subspace> = found.into_iter().collect();
        ideals.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        (ideals, complete)
    }

    pub fn principal_ideal(&self, x: &FVector) -> Subspace {
        self.ideal_closure(&Subspace::span(self.field(), self.dim(), core::slice::from_ref(x)))
    }

    /// Elementwise primality: `R/I` is prime iff no nonzero `x, y` have
    /// `x r y = 0` for all `r` in its unitization. For fixed `x` the bad `y`
    /// form a linear space, so only `x` is enumerated.
    pub fn prime_scan(&self, ideal: &Subspace, budget: u64) -> Result<PrimeScan, Error> {
        let q = self.quotient(ideal)?;
        let qa = &q.algebra;
        let n = qa.dim();
        if n == 0 {
            return Ok(PrimeScan::NotProper);
        }
        let basis = qa.basis();
        for x in projective_points(qa.field(), n, budget)? {
            let k = kernel(&sandwich_matrix(qa, &basis, &x));
            if k.rows() > 0 {
                return Ok(PrimeScan::ZeroDivisors(q.lift(&x), q.lift(&k.row_vector(0))));
            }
        }
        Ok(PrimeScan::Prime)
    }

    pub fn is_prime_ideal(&self, ideal: &Subspace, budget: u64) -> Result<bool, Error> {
        Ok(self.prime_scan(ideal, budget)? == PrimeScan::Prime)
    }

    /// Lattice definition: `I` proper, and `JK ⊆ I` forces `J ⊆ I` or `K ⊆ I`
    /// for all ideals `J, K` in `lattice`.
    pub fn is_prime_ideal_lattice(&self, ideal: &Subspace, lattice: &[Subspace]) -> bool {
        if ideal.is_whole() {
            return false;
        }
        lattice.iter().all(|j| {
            j.leq(ideal)
                || lattice
                    .iter()
                    .all(|k| k.leq(ideal) || !self.product_space(j, k).leq(ideal))
        })
    }

    /// Prime ideal `P` with `R/P` of characteristic 2 satisfying `s₄`.
    pub fn is_exceptional_prime(&self, ideal: &Subspace, budget: u64) -> Result<bool, Error> {
        if !self.is_prime_ideal(ideal, budget)? {
            return Err(Error::NotPrime);
        }
        let q = self.quotient(ideal)?;
        Ok(q.algebra.p() == 2 && q.algebra.s4_span().is_zero())
    }

    /// The alternative test `2Q + Q̃S₄(Q)Q̃ = 0` on the quotient `Q = R/P`.
    pub fn is_exceptional_prime_by_ideal(&self, ideal: &Subspace) -> Result<bool, Error> {
        let q = self.quotient(ideal)?;
        Ok(q.algebra.s4_ideal().is_zero())
    }

    /// Lattice plus classification of every ideal.
    pub fn spectrum(&self, budget: u64) -> SpectrumReport {
        let (spaces, complete) = self.ideal_lattice_spaces(budget);
        let whole = self.whole_space();
        let ideals = spaces
            .iter()
            .map(|s| {
                let is_proper = *s != whole;
                let is_maximal = is_proper
                    && !spaces
                        .iter()
                        .any(|t| *t != whole && t != s && s.leq(t));
                let is_prime = match self.is_prime_ideal(s, budget) {
                    Ok(b) => b,
                    Err(_) => self.is_prime_ideal_lattice(s, &spaces),
                };
                let is_exceptional = is_prime.then(|| {
                    let q = self.quotient(s).expect("lattice members are ideals");
                    q.algebra.p() == 2 && q.algebra.s4_span().is_zero()
                });
                IdealRecord {
                    subspace: s.clone(),
                    is_proper,
                    is_maximal,
                    is_prime,
                    is_exceptional,
                }
            })
            .collect();
        SpectrumReport {
            ideals,
            lattice_complete: complete,
        }
    }

    fn complete_spectrum(&self, budget: u64) -> Result<SpectrumReport, Error> {
        let spectrum = self.spectrum(budget);
        if !spectrum.lattice_complete {
            return Err(Error::BudgetExceeded {
                required: self.cardinality(),
                budget,
            });
        }
        Ok(spectrum)
    }

    /// Whether every proper ideal lies in a non-exceptional prime ideal,
    /// cross-validated against `R = 2R + R̃S₄(R)R̃` plus prime cofinality.
    pub fn hypothesis_nonexceptional_cofinal(&self, budget: u64) -> Result<CofinalityReport, Error> {
        let spectrum = self.complete_spectrum(budget)?;
        Ok(self.cofinality_from_spectrum(&spectrum))
    }

    pub fn cofinality_from_spectrum(&self, spectrum: &SpectrumReport) -> CofinalityReport {
        let (holds, witness) = spectrum.nonexceptional_cofinal();
        let prime_cofinal = spectrum.prime_cofinal();
        let s4_criterion = self.s4_ideal().is_whole();
        CofinalityReport {
            holds,
            witness,
            prime_cofinal,
            s4_criterion,
            agree: holds == (s4_criterion && prime_cofinal),
        }
    }

    pub fn check_max_vs_prime(&self, budget: u64) -> Result<MaxPrimeReport, Error> {
        let spectrum = self.complete_spectrum(budget)?;
        Ok(self.max_vs_prime_from_spectrum(&spectrum))
    }

    pub fn max_vs_prime_from_spectrum(&self, spectrum: &SpectrumReport) -> MaxPrimeReport {
        let prime_cofinal = spectrum.prime_cofinal();
        let idempotent = self.is_idempotent_ring();
        let maximal_are_prime = spectrum.maximal().all(|m| m.is_prime);
        let maximal_cofinal = spectrum.maximal_cofinal();
        MaxPrimeReport {
            prime_cofinal,
            idempotent,
            maximal_are_prime,
            maximal_cofinal,
            cofinal_implies_idempotent: !prime_cofinal || idempotent,
            idempotent_implies_maximal_prime: !idempotent || maximal_are_prime,
            maximal_prime_implies_cofinal: !(maximal_cofinal && maximal_are_prime) || prime_cofinal,
        }
    }
}

/// Stacked matrices of `y ↦ xy` and `y ↦ x e_j y`; the kernel is every `y`
/// with `x R̃ y = 0`.
fn sandwich_matrix(alg: &Algebra, basis: &[FVector], x: &FVector) -> FMatrix {
    let mut m = alg.left_mul_matrix(x);
    for e in basis {
        m = m.vstack(&alg.left_mul_matrix(&alg.mul_raw(x, e)));
    }
    m
}
