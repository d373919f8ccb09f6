use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{Algebra, Quotient, Unitization};
use crate::budget::Budgets;
use crate::nilpotent::{ElementScan, InnerAutomorphism, NilReport, ZpbReport};
use crate::spectrum::{CofinalityReport, MaxPrimeReport, SpectrumReport};
use crate::subspace::Subspace;

/// A non-exceptional prime ideal with its quotient data.
#[derive(Clone, Debug)]
pub struct PrimeQuotient {
    pub ideal: Subspace,
    pub quotient: Quotient,
    pub commutators: Subspace,
    pub center: Subspace,
}

/// Everything about one algebra that the theorem checks share.
#[derive(Clone, Debug)]
pub struct AlgebraFacts {
    pub id: String,
    pub algebra: Algebra,
    pub unit: Unitization,
    pub whole: Subspace,
    pub commutators: Subspace,
    pub commutators_full: bool,
    pub center: Subspace,
    /// `R^{(n)}` for `n = 0..=4`.
    pub derived_powers: Vec<Subspace>,
    /// `None` when the ideal lattice could not be enumerated.
    pub spectrum: Option<SpectrumReport>,
    pub cofinality: Option<CofinalityReport>,
    pub max_prime: Option<MaxPrimeReport>,
    pub nonexceptional_primes: Vec<PrimeQuotient>,
    pub s4_criterion: bool,
    pub nil: NilReport,
    pub square_zero: ElementScan,
    pub nilpotent: ElementScan,
    /// Largest nilpotency index among the scanned nilpotent elements.
    pub max_nilpotency_index: usize,
    /// Generators of the unit group of the unitization, when enumerable.
    pub unit_generators: Option<Vec<InnerAutomorphism>>,
    pub unit_group_order: Option<usize>,
    pub square_zero_units: Vec<InnerAutomorphism>,
    pub nilpotent_units: Vec<InnerAutomorphism>,
    pub zpb: Option<ZpbReport>,
}

impl AlgebraFacts {
    pub fn compute(id: &str, algebra: Algebra, budgets: &Budgets) -> Self {
        let b = budgets.elements;
        let unit = algebra.unitize();
        let whole = algebra.whole_space();
        let commutators = algebra.commutator_space();
        let commutators_full = algebra.is_full(&commutators);
        let center = algebra.center();
        let mut derived_powers = alloc::vec![whole.clone()];
        for n in 1..=4 {
            let prev = &derived_powers[n - 1];
            derived_powers.push(algebra.bracket_space(prev, prev));
        }
        let spectrum = {
            let s = algebra.spectrum(b);
            s.lattice_complete.then_some(s)
        };
        let cofinality = spectrum.as_ref().map(|s| algebra.cofinality_from_spectrum(s));
        let max_prime = spectrum.as_ref().map(|s| algebra.max_vs_prime_from_spectrum(s));
        let nonexceptional_primes = spectrum
            .iter()
            .flat_map(|s| s.primes())
            .filter(|r| r.is_exceptional == Some(false))
            .map(|r| {
                let quotient = algebra.quotient(&r.subspace).expect("prime ideals are ideals");
                PrimeQuotient {
                    ideal: r.subspace.clone(),
                    commutators: quotient.algebra.commutator_space(),
                    center: quotient.algebra.center(),
                    quotient,
                }
            })
            .collect();
        let s4_criterion = algebra.s4_ideal().is_whole();
        let nil = algebra.nil_report(b);
        let square_zero = algebra.square_zero_elements(b);
        let nilpotent = algebra.nilpotent_elements(b);
        let max_nilpotency_index = nilpotent
            .elements
            .iter()
            .filter_map(|x| algebra.nilpotency_index(x))
            .max()
            .unwrap_or(1);
        let (unit_generators, unit_group_order) = match algebra.inner_automorphisms(b) {
            Ok(all) => (Some(algebra.unit_group_generators(&unit, &all)), Some(all.len())),
            Err(_) => (None, None),
        };
        let square_zero_units = algebra.sq_zero_units(&unit, &square_zero.elements);
        let nilpotent_units = algebra.nilpotent_units(&unit, &nilpotent.elements);
        let zpb = algebra.zero_product_balanced(b).ok();
        AlgebraFacts {
            id: String::from(id),
            algebra,
            unit,
            whole,
            commutators,
            commutators_full,
            center,
            derived_powers,
            spectrum,
            cofinality,
            max_prime,
            nonexceptional_primes,
            s4_criterion,
            nil,
            square_zero,
            nilpotent,
            max_nilpotency_index,
            unit_generators,
            unit_group_order,
            square_zero_units,
            nilpotent_units,
            zpb,
        }
    }

    pub fn prime_cofinal(&self) -> Option<bool> {
        self.cofinality.as_ref().map(|c| c.prime_cofinal)
    }

    pub fn nonexceptional_cofinal(&self) -> Option<bool> {
        self.cofinality.as_ref().map(|c| c.holds)
    }

    pub fn p(&self) -> u32 {
        self.algebra.p()
    }

    pub fn is_submodule(&self, v: &Subspace) -> bool {
        self.algebra.bracket_space(&self.commutators, v).leq(v)
    }

    pub fn submodule_closure(&self, v: &Subspace) -> Subspace {
        self.algebra.bracket_closure(&self.commutators, v)
    }

    pub fn fully_noncentral(&self, v: &Subspace) -> bool {
        self.algebra.is_fully_noncentral(v)
    }

    pub fn invariant_under_units(&self, v: &Subspace) -> Option<bool> {
        self.unit_generators
            .as_ref()
            .map(|g| self.algebra.is_invariant(v, &self.unit, g))
    }
}
