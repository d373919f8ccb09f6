use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::corpus::all_subspaces;
use super::facts::{AlgebraFacts, PrimeQuotient};
use super::sampler::{SampleKind, SamplerConfig, SubspaceSampler};
use super::{
    ConclusionStatus, Counterexample, CounterexampleSource, Finding, HypothesisStatus, TheoremVerdict, Witness,
    WitnessKind, MAX_STORED_COUNTEREXAMPLES,
};
use crate::error::Error;
use crate::field::FVector;
use crate::nilpotent::{InnerAutomorphism, VandermondeOutcome};
use crate::subspace::Subspace;

/// The audited statements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// `T(V)` is a subring.
    TSubring,
    /// `R̃[T(V)∩V, T²(V)∩T(V)]R̃ ⊆ V+V²` and `[R, R̃[T²∩T, T³∩T²]R̃] ⊆ V`.
    NormalizerInclusions,
    /// The same inclusions for Lie ideals, with `T^n(L) ⊆ T^{n+1}(L)`.
    LieIdealInclusions,
    /// `V^(n)` is an `[R,R]`-submodule inside `T^n(V)`, decreasing in `n`.
    SubmoduleTower,
    /// The inclusions for `[R,R]`-submodules.
    SubmoduleInclusions,
    /// Prime cofinality, idempotency and primality of maximal ideals.
    MaxVsPrime,
    /// Elementary identities for Lie ideals.
    BasicLie,
    /// Lie ideals: `[L,L]` full ⟺ `[L,L²]` full ⟺ `R = L²` ⟺ `[R,R] ⊆ L`.
    LieIdealSquares,
    /// `[R,R]` full ⟺ `[[R,R],[R,R]]` full ⟺ `R = [R,R]²`.
    CommutatorFullness,
    /// Non-exceptional cofinality versus `R = 2R + R̃S₄(R)R̃`.
    ExceptionalCriterion,
    /// `[W^(m), W^(n)]` is noncentral in non-exceptional prime quotients.
    PrimeQuotientDerived,
    /// `[R,R]`-submodules: fully noncentral ⟺ `V^(n)` full ⟺ `[R,R] ⊆ V`, with collapse.
    SubmoduleCollapse,
    /// Fully noncentral `V`: `[R,R] ⊆ V` ⟺ Lie ideal ⟺ `[R,R]`-submodule.
    FullyNoncentralSubgroups,
    /// `[R,R] = R^(n) = [R^(m), R^(n)]` once `[R,R]` is full.
    CommutatorPowers,
    /// Unital, odd characteristic: fully noncentral submodules give `R = V²`.
    UnitalOddSubmodules,
    /// Pairs of Lie ideals.
    LieIdealPairs,
    /// `N₂`-invariance ⟺ `[N₂⁺, V] ⊆ V`.
    SquareZeroInvariance,
    /// Invariance and Lie conditions, square-zero form.
    SquareZeroTfae,
    /// `[x, V] ⊆ V` for `V` invariant under all `λx`.
    NilpotentInvariance,
    /// `[N⁺, N⁺] ⊆ N⁺`.
    NilpotentCommutators,
    /// Invariance and Lie conditions, nilpotent form.
    NilpotentTfae,
    /// Zero-product balanced unital algebras.
    ZeroProductBalanced,
    /// `FN₂⁺ ⊆ N₂⁺ ⊆ N⁺`, `FN₂⁺ ⊆ [R,R]`, invariance of the spans.
    NilSpans,
    /// `N₂` full ⟺ `FN₂` full ⟺ `FN₂` fully noncentral.
    SquareZeroFullness,
    /// `[R,R] = FN₂(R)⁺`.
    CommutatorsFn2,
    /// `[R,R] ⊆ N₂⁺` ⟺ `[R,R] = FN₂⁺`.
    CommutatorsN2Fn2,
}

impl Theorem {
    pub const ALL: [Theorem; 26] = [
        Theorem::TSubring,
        Theorem::NormalizerInclusions,
        Theorem::LieIdealInclusions,
        Theorem::SubmoduleTower,
        Theorem::SubmoduleInclusions,
        Theorem::MaxVsPrime,
        Theorem::BasicLie,
        Theorem::LieIdealSquares,
        Theorem::CommutatorFullness,
        Theorem::ExceptionalCriterion,
        Theorem::PrimeQuotientDerived,
        Theorem::SubmoduleCollapse,
        Theorem::FullyNoncentralSubgroups,
        Theorem::CommutatorPowers,
        Theorem::UnitalOddSubmodules,
        Theorem::LieIdealPairs,
        Theorem::SquareZeroInvariance,
        Theorem::SquareZeroTfae,
        Theorem::NilpotentInvariance,
        Theorem::NilpotentCommutators,
        Theorem::NilpotentTfae,
        Theorem::ZeroProductBalanced,
        Theorem::NilSpans,
        Theorem::SquareZeroFullness,
        Theorem::CommutatorsFn2,
        Theorem::CommutatorsN2Fn2,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::TSubring => "t-subring",
            Theorem::NormalizerInclusions => "normalizer-inclusions",
            Theorem::LieIdealInclusions => "lie-ideal-inclusions",
            Theorem::SubmoduleTower => "submodule-tower",
            Theorem::SubmoduleInclusions => "submodule-inclusions",
            Theorem::MaxVsPrime => "max-vs-prime",
            Theorem::BasicLie => "basic-lie",
            Theorem::LieIdealSquares => "lie-ideal-squares",
            Theorem::CommutatorFullness => "commutator-fullness",
            Theorem::ExceptionalCriterion => "exceptional-criterion",
            Theorem::PrimeQuotientDerived => "prime-quotient-derived",
            Theorem::SubmoduleCollapse => "submodule-collapse",
            Theorem::FullyNoncentralSubgroups => "fully-noncentral-subgroups",
            Theorem::CommutatorPowers => "commutator-powers",
            Theorem::UnitalOddSubmodules => "unital-odd-submodules",
            Theorem::LieIdealPairs => "lie-ideal-pairs",
            Theorem::SquareZeroInvariance => "square-zero-invariance",
            Theorem::SquareZeroTfae => "square-zero-tfae",
            Theorem::NilpotentInvariance => "nilpotent-invariance",
            Theorem::NilpotentCommutators => "nilpotent-commutators",
            Theorem::NilpotentTfae => "nilpotent-tfae",
            Theorem::ZeroProductBalanced => "zero-product-balanced",
            Theorem::NilSpans => "nil-spans",
            Theorem::SquareZeroFullness => "square-zero-fullness",
            Theorem::CommutatorsFn2 => "commutators-fn2",
            Theorem::CommutatorsN2Fn2 => "commutators-n2-fn2",
        }
    }

    /// Whether the statement is about the algebra alone (no samples).
    pub fn is_algebra_level(self) -> bool {
        matches!(
            self,
            Theorem::MaxVsPrime
                | Theorem::CommutatorFullness
                | Theorem::ExceptionalCriterion
                | Theorem::CommutatorPowers
                | Theorem::NilpotentCommutators
                | Theorem::NilSpans
                | Theorem::SquareZeroFullness
                | Theorem::CommutatorsFn2
                | Theorem::CommutatorsN2Fn2
        )
    }

    /// Whether a failing hypothesis triggers a search over all subspaces.
    fn searchable(self) -> bool {
        matches!(
            self,
            Theorem::LieIdealSquares
                | Theorem::SubmoduleCollapse
                | Theorem::FullyNoncentralSubgroups
                | Theorem::UnitalOddSubmodules
                | Theorem::SquareZeroInvariance
                | Theorem::SquareZeroTfae
                | Theorem::NilpotentTfae
                | Theorem::ZeroProductBalanced
        )
    }
}

/// Inputs of one evaluation.
#[derive(Clone, Debug, Default)]
struct Sample {
    v: Option<Subspace>,
    w: Option<Subspace>,
    x: Option<FVector>,
    ideal: Option<Subspace>,
}

impl Sample {
    fn single(v: Subspace) -> Self {
        Sample {
            v: Some(v),
            ..Sample::default()
        }
    }

    fn witnesses(&self) -> Vec<Witness> {
        let mut out = Vec::new();
        if let Some(v) = &self.v {
            out.push(Witness::subspace("V", v));
        }
        if let Some(w) = &self.w {
            out.push(Witness::subspace("W", w));
        }
        if let Some(x) = &self.x {
            out.push(Witness::element("x", x));
        }
        if let Some(p) = &self.ideal {
            out.push(Witness::subspace("P", p));
        }
        out
    }

    fn from_witnesses(facts: &AlgebraFacts, ws: &[Witness]) -> Result<Self, Error> {
        let alg = &facts.algebra;
        let to_space = |w: &Witness| -> Result<Subspace, Error> {
            let gens = w
                .data
                .iter()
                .map(|row| alg.element(row.clone()))
                .collect::<Result<Vec<_>, _>>()?;
            alg.span(&gens)
        };
        let mut s = Sample::default();
        for w in ws {
            match (w.label.as_str(), w.kind) {
                ("V", WitnessKind::Subspace) => s.v = Some(to_space(w)?),
                ("W", WitnessKind::Subspace) => s.w = Some(to_space(w)?),
                ("P", WitnessKind::Subspace) => s.ideal = Some(to_space(w)?),
                ("x", WitnessKind::Element) => {
                    let row = w.data.first().ok_or(Error::InvalidParameter("empty element witness".into()))?;
                    s.x = Some(alg.element(row.clone())?);
                }
                _ => {}
            }
        }
        Ok(s)
    }
}

enum Outcome {
    NotQualified,
    Skipped,
    Passed,
    Violated(String),
}

struct Eval {
    outcome: Outcome,
    finding: Option<(String, String)>,
}

impl From<Outcome> for Eval {
    fn from(outcome: Outcome) -> Self {
        Eval { outcome, finding: None }
    }
}

/// `Passed` when every listed inclusion holds, otherwise the first failing name.
fn require(checks: &[(&str, bool)]) -> Outcome {
    match checks.iter().find(|(_, ok)| !ok) {
        Some((name, _)) => Outcome::Violated(name.to_string()),
        None => Outcome::Passed,
    }
}

/// All conditions equal; otherwise a description of the disagreement.
fn equivalent(conds: &[(String, bool)]) -> Option<String> {
    let first = conds.first()?.1;
    if conds.iter().all(|(_, b)| *b == first) {
        return None;
    }
    let parts: Vec<String> = conds.iter().map(|(n, b)| format!("{n}={b}")).collect();
    Some(format!("conditions disagree: {}", parts.join(", ")))
}

fn named(n: &str, b: bool) -> (String, bool) {
    (n.to_string(), b)
}

struct Gate {
    fails: Vec<&'static str>,
    skipped: Vec<&'static str>,
}

impl Gate {
    fn new() -> Self {
        Gate {
            fails: Vec::new(),
            skipped: Vec::new(),
        }
    }

    fn need(&mut self, name: &'static str, value: Option<bool>) -> &mut Self {
        match value {
            Some(true) => {}
            Some(false) => self.fails.push(name),
            None => self.skipped.push(name),
        }
        self
    }

    fn status(&self) -> HypothesisStatus {
        if !self.skipped.is_empty() {
            HypothesisStatus::Skipped(format!("budget: {}", self.skipped.join(",")))
        } else if !self.fails.is_empty() {
            HypothesisStatus::Fails(self.fails.join(","))
        } else {
            HypothesisStatus::Holds
        }
    }
}

fn hypothesis(t: Theorem, f: &AlgebraFacts) -> HypothesisStatus {
    let mut g = Gate::new();
    let odd = Some(f.p() != 2);
    let units = f.unit_generators.as_ref().map(|_| true);
    match t {
        Theorem::TSubring
        | Theorem::NormalizerInclusions
        | Theorem::LieIdealInclusions
        | Theorem::SubmoduleTower
        | Theorem::SubmoduleInclusions
        | Theorem::BasicLie => {}
        Theorem::MaxVsPrime | Theorem::ExceptionalCriterion => {
            g.need("ideal-lattice", f.spectrum.as_ref().map(|_| true));
        }
        Theorem::LieIdealSquares => {
            g.need("prime-cofinal", f.prime_cofinal())
                .need("commutators-full", Some(f.commutators_full));
        }
        Theorem::CommutatorFullness | Theorem::SquareZeroFullness => {
            g.need("prime-cofinal", f.prime_cofinal());
        }
        Theorem::PrimeQuotientDerived => {
            g.need(
                "nonexceptional-prime",
                f.spectrum.as_ref().map(|_| !f.nonexceptional_primes.is_empty()),
            );
        }
        Theorem::SubmoduleCollapse | Theorem::CommutatorsN2Fn2 => {
            g.need("nonexceptional-cofinal", f.nonexceptional_cofinal())
                .need("commutators-full", Some(f.commutators_full));
        }
        Theorem::FullyNoncentralSubgroups | Theorem::CommutatorPowers | Theorem::LieIdealPairs => {
            g.need("nonexceptional-cofinal", f.nonexceptional_cofinal());
        }
        Theorem::UnitalOddSubmodules => {
            g.need("unital", Some(f.algebra.is_unital())).need("odd-characteristic", odd);
        }
        Theorem::SquareZeroInvariance => {
            g.need("odd-characteristic", odd)
                .need("square-zero-scan", Some(f.square_zero.exhaustive).filter(|&e| e));
        }
        Theorem::SquareZeroTfae => {
            g.need("odd-characteristic", odd)
                .need("commutators-in-n2span", Some(f.nil.commutators_in_n2span))
                .need("nonexceptional-cofinal", f.nonexceptional_cofinal())
                .need("unit-group", units)
                .need("square-zero-scan", Some(f.square_zero.exhaustive).filter(|&e| e));
        }
        Theorem::NilpotentInvariance => {
            g.need("nilpotent-scan", Some(f.nilpotent.exhaustive).filter(|&e| e)).need(
                "nonzero-nilpotent",
                Some(f.nilpotent.elements.iter().any(|x| !x.is_zero())),
            );
        }
        Theorem::NilpotentCommutators => {
            g.need("field-size", Some(f.p() as usize > f.algebra.dim()))
                .need("nilpotent-scan", Some(f.nilpotent.exhaustive).filter(|&e| e));
        }
        Theorem::NilpotentTfae => {
            g.need("field-size", Some(f.p() as usize > f.max_nilpotency_index))
                .need("commutators-in-nspan", Some(f.commutators.leq(&f.nil.n_span)))
                .need("nonexceptional-cofinal", f.nonexceptional_cofinal())
                .need("unit-group", units)
                .need("nilpotent-scan", Some(f.nilpotent.exhaustive).filter(|&e| e));
        }
        Theorem::ZeroProductBalanced => {
            g.need("zero-product-balanced", f.zpb.as_ref().map(|z| z.balanced))
                .need("unital", Some(f.algebra.is_unital()))
                .need("odd-characteristic", odd)
                .need("unit-group", units);
        }
        Theorem::NilSpans => {
            g.need("nil-scans", Some(f.nil.exhaustive).filter(|&e| e));
        }
        Theorem::CommutatorsFn2 => {
            g.need("nonexceptional-cofinal", f.nonexceptional_cofinal())
                .need("commutators-in-n2span", Some(f.nil.commutators_in_n2span))
                .need("n2-full", Some(f.nil.n2_is_full));
        }
    }
    g.status()
}

/// How a theorem turns a raw subspace into a test input.
#[derive(Clone, Copy)]
enum Shape {
    Kind(SampleKind),
    SquareZeroOrbit,
    NilpotentOrbit,
    N2Bracket,
}

fn shape_apply(shape: Shape, f: &AlgebraFacts, v: Subspace) -> Subspace {
    let alg = &f.algebra;
    match shape {
        Shape::Kind(SampleKind::Raw) => v,
        Shape::Kind(SampleKind::LieClosure) => alg.lie_closure(&v),
        Shape::Kind(SampleKind::SubmoduleClosure) => f.submodule_closure(&v),
        Shape::Kind(SampleKind::InvariantOrbit) => match &f.unit_generators {
            Some(g) => alg.invariant_orbit_closure(&v, &f.unit, g),
            None => alg.invariant_orbit_closure(&v, &f.unit, &f.square_zero_units),
        },
        Shape::SquareZeroOrbit => alg.orbit_closure(&v, &f.unit, &f.square_zero_units),
        Shape::NilpotentOrbit => alg.orbit_closure(&v, &f.unit, &f.nilpotent_units),
        Shape::N2Bracket => alg.bracket_closure(&f.nil.n2_span, &v),
    }
}

fn rotating_shapes(config: &SamplerConfig, extra: Option<Shape>) -> Vec<Shape> {
    let mut shapes: Vec<Shape> = config.kinds.iter().map(|&k| Shape::Kind(k)).collect();
    if shapes.is_empty() {
        shapes.push(Shape::Kind(SampleKind::Raw));
    }
    shapes.extend(extra);
    shapes
}

/// Draws a sample; on even indices redraws up to the retry cap until `want` holds.
fn draw_with_retry(
    idx: usize,
    config: &SamplerConfig,
    sampler: &mut SubspaceSampler,
    mut make: impl FnMut(&mut SubspaceSampler) -> Sample,
    want: impl Fn(&Sample) -> bool,
) -> Sample {
    let tries = if idx.is_multiple_of(2) { config.retry_cap.max(1) } else { 1 };
    let mut s = make(sampler);
    for _ in 1..tries {
        if want(&s) {
            break;
        }
        s = make(sampler);
    }
    s
}

fn draw(t: Theorem, f: &AlgebraFacts, config: &SamplerConfig, sampler: &mut SubspaceSampler, idx: usize) -> Sample {
    let alg = &f.algebra;
    let fnc = |s: &Sample| s.v.as_ref().is_some_and(|v| f.fully_noncentral(v));
    let single = |shape: Shape, sampler: &mut SubspaceSampler| {
        let raw = sampler.raw(alg);
        Sample::single(shape_apply(shape, f, raw))
    };
    let pick = |shapes: &[Shape]| shapes[idx % shapes.len()];
    match t {
        Theorem::TSubring | Theorem::NormalizerInclusions => single(Shape::Kind(SampleKind::Raw), sampler),
        Theorem::LieIdealInclusions | Theorem::BasicLie => single(Shape::Kind(SampleKind::LieClosure), sampler),
        Theorem::SubmoduleTower | Theorem::SubmoduleInclusions => {
            single(Shape::Kind(SampleKind::SubmoduleClosure), sampler)
        }
        Theorem::LieIdealSquares => draw_with_retry(
            idx,
            config,
            sampler,
            |s| single(Shape::Kind(SampleKind::LieClosure), s),
            |s| {
                let l = s.v.as_ref().expect("single sample");
                alg.is_full(&alg.bracket_space(l, l))
            },
        ),
        Theorem::SubmoduleCollapse | Theorem::UnitalOddSubmodules => draw_with_retry(
            idx,
            config,
            sampler,
            |s| single(Shape::Kind(SampleKind::SubmoduleClosure), s),
            fnc,
        ),
        Theorem::FullyNoncentralSubgroups => {
            let shapes = rotating_shapes(config, None);
            draw_with_retry(idx, config, sampler, |s| single(pick(&shapes), s), fnc)
        }
        Theorem::SquareZeroTfae | Theorem::ZeroProductBalanced => {
            let shapes = rotating_shapes(config, Some(Shape::SquareZeroOrbit));
            draw_with_retry(idx, config, sampler, |s| single(pick(&shapes), s), fnc)
        }
        Theorem::NilpotentTfae => {
            let shapes = rotating_shapes(config, Some(Shape::NilpotentOrbit));
            draw_with_retry(idx, config, sampler, |s| single(pick(&shapes), s), fnc)
        }
        Theorem::SquareZeroInvariance => {
            let shape = if idx.is_multiple_of(2) { Shape::SquareZeroOrbit } else { Shape::N2Bracket };
            single(shape, sampler)
        }
        Theorem::LieIdealPairs => draw_with_retry(
            idx,
            config,
            sampler,
            |s| {
                let k = alg.lie_closure(&s.raw(alg));
                let l = alg.lie_closure(&s.raw(alg));
                Sample {
                    v: Some(k),
                    w: Some(l),
                    ..Sample::default()
                }
            },
            |s| {
                s.v.as_ref().is_some_and(|k| f.fully_noncentral(k))
                    && s.w.as_ref().is_some_and(|l| f.fully_noncentral(l))
            },
        ),
        Theorem::PrimeQuotientDerived => {
            let pq = &f.nonexceptional_primes[idx % f.nonexceptional_primes.len()];
            let q = &pq.quotient.algebra;
            draw_with_retry(
                idx,
                config,
                sampler,
                |s| {
                    let w = q.bracket_closure(&pq.commutators, &s.raw(q));
                    Sample {
                        v: Some(pq.quotient.preimage(&w)),
                        ideal: Some(pq.ideal.clone()),
                        ..Sample::default()
                    }
                },
                |s| {
                    let w = pq.quotient.project_subspace(s.v.as_ref().expect("set above"));
                    !q.bracket_space(&q.whole_space(), &w).is_zero()
                },
            )
        }
        Theorem::NilpotentInvariance => {
            let nonzero: Vec<&FVector> = f.nilpotent.elements.iter().filter(|x| !x.is_zero()).collect();
            let x = nonzero[sampler.index(nonzero.len())].clone();
            let auts: Vec<InnerAutomorphism> = (1..f.p())
                .filter_map(|l| InnerAutomorphism::nilpotent(&f.unit, &x.scale(l)))
                .collect();
            let raw = sampler.raw(alg);
            Sample {
                v: Some(alg.orbit_closure(&raw, &f.unit, &auts)),
                x: Some(x),
                ..Sample::default()
            }
        }
        _ => Sample::default(),
    }
}

fn evaluate(t: Theorem, f: &AlgebraFacts, s: &Sample) -> Eval {
    let alg = &f.algebra;
    let r = &f.whole;
    let rr = &f.commutators;
    let full = |x: &Subspace| alg.is_full(x);
    let br = |a: &Subspace, b: &Subspace| alg.bracket_space(a, b);
    let prod = |a: &Subspace, b: &Subspace| alg.product_space(a, b);
    let ideal = |a: &Subspace| alg.ideal_closure(a);
    let v = s.v.as_ref();
    match t {
        Theorem::TSubring => {
            let tv = alg.t_of(v.expect("sample"));
            require(&[("T(V)T(V) ⊆ T(V)", prod(&tv, &tv).leq(&tv))]).into()
        }
        Theorem::NormalizerInclusions => {
            let v = v.expect("sample");
            let t1 = alg.t_of(v);
            let t2 = alg.t_of(&t1);
            let t3 = alg.t_of(&t2);
            let a = br(&t1.intersect(v), &t2.intersect(&t1));
            let b = br(&t2.intersect(&t1), &t3.intersect(&t2));
            let v_plus_v2 = v.sum(&prod(v, v));
            let b_full = full(&b);
            require(&[
                ("R̃[T∩V, T²∩T]R̃ ⊆ V+V²", ideal(&a).leq(&v_plus_v2)),
                ("[R, R̃[T²∩T, T³∩T²]R̃] ⊆ V", br(r, &ideal(&b)).leq(v)),
                ("[T²∩T, T³∩T²] full ⇒ [R,R] ⊆ V", !b_full || rr.leq(v)),
                ("[T²∩T, T³∩T²] full ⇒ V Lie ideal", !b_full || alg.is_lie_ideal(v)),
            ])
            .into()
        }
        Theorem::LieIdealInclusions => {
            let l = v.expect("sample");
            if !alg.is_lie_ideal(l) {
                return Outcome::NotQualified.into();
            }
            let tower = alg.t_tower(l, 4);
            let mono = (0..4).all(|n| tower.stage(n).unwrap().leq(tower.stage(n + 1).unwrap()));
            let ll = ideal(&br(l, l));
            require(&[
                ("T^n(L) ⊆ T^{n+1}(L)", mono),
                ("R̃[L,L]R̃ ⊆ L+L²", ll.leq(&l.sum(&prod(l, l)))),
                ("[R, R̃[L,L]R̃] ⊆ L", br(r, &ll).leq(l)),
            ])
            .into()
        }
        Theorem::SubmoduleTower => {
            let v = v.expect("sample");
            if !f.is_submodule(v) {
                return Outcome::NotQualified.into();
            }
            let mut prev = alg.derived(v, 1);
            let mut tn = alg.t_of(v);
            for n in 1..=5 {
                let next = br(&prev, &prev);
                if !f.is_submodule(&prev) {
                    return Outcome::Violated(format!("V^({n}) is an [R,R]-submodule")).into();
                }
                if !prev.leq(&tn) {
                    return Outcome::Violated(format!("V^({n}) ⊆ T^{n}(V)")).into();
                }
                if !next.leq(&prev) {
                    return Outcome::Violated(format!("V^({}) ⊆ V^({n})", n + 1)).into();
                }
                prev = next;
                tn = alg.t_of(&tn);
            }
            Outcome::Passed.into()
        }
        Theorem::SubmoduleInclusions => {
            let v = v.expect("sample");
            if !f.is_submodule(v) {
                return Outcome::NotQualified.into();
            }
            let ds: Vec<Subspace> = (0..=5).map(|n| alg.derived(v, n)).collect();
            let ts = alg.t_tower(v, 5);
            for (n, d) in ds.iter().enumerate().skip(1) {
                for j in 1..=n {
                    if !d.leq(ts.stage(j).unwrap()) {
                        return Outcome::Violated(format!("V^({n}) ⊆ T^{j}(V)")).into();
                    }
                }
            }
            let a = br(&ds[1].intersect(v), &ds[2]);
            let b = br(&ds[2], &ds[3]);
            let b_full = full(&b);
            require(&[
                ("R̃[V^(1)∩V, V^(2)]R̃ ⊆ V+V²", ideal(&a).leq(&v.sum(&prod(v, v)))),
                ("[R, R̃[V^(2), V^(3)]R̃] ⊆ V", br(r, &ideal(&b)).leq(v)),
                ("[V^(2), V^(3)] full ⇒ [R,R] ⊆ V", !b_full || rr.leq(v)),
            ])
            .into()
        }
        Theorem::MaxVsPrime => {
            let Some(m) = &f.max_prime else {
                return Outcome::Skipped.into();
            };
            require(&[
                ("prime cofinal ⇒ idempotent", m.cofinal_implies_idempotent),
                ("idempotent ⇒ maximal ideals prime", m.idempotent_implies_maximal_prime),
                ("maximal cofinal and maximal prime ⇒ prime cofinal", m.maximal_prime_implies_cofinal),
                ("maximal cofinal", m.maximal_cofinal),
            ])
            .into()
        }
        Theorem::BasicLie => {
            let l = v.expect("sample");
            if !alg.is_lie_ideal(l) {
                return Outcome::NotQualified.into();
            }
            let l2 = prod(l, l);
            let left = l.sum(&prod(r, l));
            require(&[
                ("R̃LR̃ = R̃L", ideal(l) == left),
                ("[R,L²] ⊆ [R,L]", br(r, &l2).leq(&br(r, l))),
                ("R̃[L,L]R̃ ⊆ L+L²", ideal(&br(l, l)).leq(&l.sum(&l2))),
                ("R̃[L,L²]R̃ ⊆ L²", ideal(&br(l, &l2)).leq(&l2)),
            ])
            .into()
        }
        Theorem::LieIdealSquares => {
            let l = v.expect("sample");
            if !alg.is_lie_ideal(l) {
                return Outcome::NotQualified.into();
            }
            let l2 = prod(l, l);
            let conds = [
                named("[L,L] full", full(&br(l, l))),
                named("[L,L²] full", full(&br(l, &l2))),
                named("R = L²", l2 == *r),
                named("[R,R] ⊆ L", rr.leq(l)),
            ];
            if let Some(msg) = equivalent(&conds) {
                return Outcome::Violated(msg).into();
            }
            if conds[0].1 && *rr != br(r, l) {
                return Outcome::Violated("[R,R] = [R,L]".into()).into();
            }
            Outcome::Passed.into()
        }
        Theorem::CommutatorFullness => {
            let rr2 = br(rr, rr);
            let rr_sq = prod(rr, rr);
            let conds = [
                named("[[R,R],[R,R]] full", full(&rr2)),
                named("[[R,R],[R,R]²] full", full(&br(rr, &rr_sq))),
                named("R = [R,R]²", rr_sq == *r),
                named("[R,R] full", f.commutators_full),
            ];
            if let Some(msg) = equivalent(&conds) {
                return Outcome::Violated(msg).into();
            }
            if f.commutators_full && *rr != br(r, rr) {
                return Outcome::Violated("[R,R] = [R,[R,R]]".into()).into();
            }
            Outcome::Passed.into()
        }
        Theorem::ExceptionalCriterion => {
            let (Some(spectrum), Some(c)) = (&f.spectrum, &f.cofinality) else {
                return Outcome::Skipped.into();
            };
            let all_nonexceptional = spectrum.primes().all(|p| p.is_exceptional == Some(false));
            let agree = spectrum.primes().all(|p| {
                alg.is_exceptional_prime_by_ideal(&p.subspace).ok() == p.is_exceptional
            });
            require(&[
                ("R = 2R + R̃S₄R̃ ⇒ primes non-exceptional", !f.s4_criterion || all_nonexceptional),
                ("non-exceptional cofinal ⇒ R = 2R + R̃S₄R̃", !c.holds || f.s4_criterion),
                ("non-exceptional cofinal ⟺ criterion and prime cofinal", c.agree),
                ("s₄ test agrees with 2Q + Q̃S₄(Q)Q̃ = 0", agree),
            ])
            .into()
        }
        Theorem::PrimeQuotientDerived => {
            let (Some(v), Some(p)) = (v, s.ideal.as_ref()) else {
                return Outcome::NotQualified.into();
            };
            let Some(pq) = f.nonexceptional_primes.iter().find(|q| q.ideal == *p) else {
                return Outcome::NotQualified.into();
            };
            prime_quotient_check(pq, v).into()
        }
        Theorem::SubmoduleCollapse => {
            let v = v.expect("sample");
            if !f.is_submodule(v) {
                return Outcome::NotQualified.into();
            }
            let c1 = f.fully_noncentral(v);
            let ds: Vec<Subspace> = (0..=4).map(|n| alg.derived(v, n)).collect();
            let mut conds = vec![named("V fully noncentral", c1)];
            for (n, d) in ds.iter().enumerate().skip(1) {
                conds.push((format!("V^({n}) full"), full(d)));
            }
            for m in 1..=3 {
                for n in 1..=3 {
                    conds.push((format!("[V^({m}),V^({n})] full"), full(&br(&ds[m], &ds[n]))));
                }
            }
            conds.push(named("[R,R] ⊆ V", rr.leq(v)));
            if let Some(msg) = equivalent(&conds) {
                return Outcome::Violated(msg).into();
            }
            let v2 = prod(v, v);
            if c1 {
                let collapse = [
                    ("[R,R] = [R,V]", *rr == br(r, v)),
                    ("[R,R] = [V,V]", *rr == ds[1]),
                    ("[R,R] = V^(n), n ≤ 4", ds[1..].iter().all(|d| d == rr)),
                    ("[R,R] = R^(n), n ≤ 4", f.derived_powers[1..].iter().all(|d| d == rr)),
                    ("R = V²", v2 == *r),
                ];
                return require(&collapse).into();
            }
            let finding = (v2 == *r).then(|| {
                (
                    "submodule-square-not-fully-noncentral".to_string(),
                    "[R,R]-submodule V with R = V² that is not fully noncentral".to_string(),
                )
            });
            Eval {
                outcome: Outcome::Passed,
                finding,
            }
        }
        Theorem::FullyNoncentralSubgroups => {
            let v = v.expect("sample");
            if !f.fully_noncentral(v) {
                return Outcome::NotQualified.into();
            }
            let lie = alg.is_lie_ideal(v);
            let conds = [
                named("[R,R] ⊆ V", rr.leq(v)),
                named("V Lie ideal", lie),
                named("V [R,R]-submodule", f.is_submodule(v)),
            ];
            if let Some(msg) = equivalent(&conds) {
                return Outcome::Violated(msg).into();
            }
            require(&[("Lie ideal inside [R,R] equals [R,R]", !(lie && v.leq(rr)) || v == rr)]).into()
        }
        Theorem::CommutatorPowers => {
            let mut conds = vec![named("[R,R] full", f.commutators_full)];
            for n in 1..=4 {
                conds.push((format!("R^({n}) full"), full(&f.derived_powers[n])));
            }
            conds.push(named("R = [R,R]²", prod(rr, rr) == *r));
            if let Some(msg) = equivalent(&conds) {
                return Outcome::Violated(msg).into();
            }
            if f.commutators_full {
                let dp = &f.derived_powers;
                let mixed = (0..=3).all(|m| (0..=3).all(|n| br(&dp[m], &dp[n]) == *rr));
                return require(&[
                    ("[R,R] = R^(n), n ≤ 4", dp[1..].iter().all(|d| d == rr)),
                    ("[R,R] = [R^(m),R^(n)], m,n ≤ 3", mixed),
                ])
                .into();
            }
            Outcome::Passed.into()
        }
        Theorem::UnitalOddSubmodules => {
            let v = v.expect("sample");
            if !f.is_submodule(v) || !f.fully_noncentral(v) {
                return Outcome::NotQualified.into();
            }
            require(&[("R = V²", prod(v, v) == *r), ("[R,R] ⊆ V", rr.leq(v))]).into()
        }
        Theorem::LieIdealPairs => {
            let (Some(k), Some(l)) = (v, s.w.as_ref()) else {
                return Outcome::NotQualified.into();
            };
            if !alg.is_lie_ideal(k) || !alg.is_lie_ideal(l) {
                return Outcome::NotQualified.into();
            }
            let kl = br(k, l);
            let kk = br(k, k);
            let ll = br(l, l);
            let conds = [
                named("[K,L] full", full(&kl)),
                named("[K,K] and [L,L] full", full(&kk) && full(&ll)),
                named("[R,K] and [R,L] full", f.fully_noncentral(k) && f.fully_noncentral(l)),
            ];
            if let Some(msg) = equivalent(&conds) {
                return Outcome::Violated(msg).into();
            }
            if conds[0].1 {
                return require(&[("[R,R] = [K,L] = [K,K] = [L,L]", kl == *rr && kk == *rr && ll == *rr)]).into();
            }
            Outcome::Passed.into()
        }
        Theorem::SquareZeroInvariance => {
            let v = v.expect("sample");
            let inv = alg.is_invariant(v, &f.unit, &f.square_zero_units);
            let closed = br(&f.nil.n2_span, v).leq(v);
            if !inv && !closed {
                return Outcome::NotQualified.into();
            }
            require(&[
                ("N₂-invariant ⇒ [N₂⁺,V] ⊆ V", !inv || closed),
                ("[N₂⁺,V] ⊆ V ⇒ N₂-invariant", !closed || inv),
            ])
            .into()
        }
        Theorem::SquareZeroTfae | Theorem::NilpotentTfae => {
            let v = v.expect("sample");
            if !f.fully_noncentral(v) {
                return Outcome::NotQualified.into();
            }
            let Some(all) = f.invariant_under_units(v) else {
                return Outcome::Skipped.into();
            };
            let (name, partial) = if t == Theorem::SquareZeroTfae {
                ("invariant under square-zero units", &f.square_zero_units)
            } else {
                ("invariant under nilpotent units", &f.nilpotent_units)
            };
            let conds = [
                named("invariant under all units", all),
                named(name, alg.is_invariant(v, &f.unit, partial)),
                named("[A,A] ⊆ V", rr.leq(v)),
                named("V Lie ideal", alg.is_lie_ideal(v)),
                named("V [A,A]-submodule", f.is_submodule(v)),
            ];
            match equivalent(&conds) {
                Some(msg) => Outcome::Violated(msg).into(),
                None => Outcome::Passed.into(),
            }
        }
        Theorem::ZeroProductBalanced => match v {
            None => require(&[("[A,A] ⊆ N₂⁺", f.nil.commutators_in_n2span)]).into(),
            Some(v) => {
                if !f.fully_noncentral(v) {
                    return Outcome::NotQualified.into();
                }
                let Some(all) = f.invariant_under_units(v) else {
                    return Outcome::Skipped.into();
                };
                let conds = [
                    named("V Lie ideal", alg.is_lie_ideal(v)),
                    named("invariant under all units", all),
                    named("[A,A] ⊆ V", rr.leq(v)),
                ];
                match equivalent(&conds) {
                    Some(msg) => Outcome::Violated(msg).into(),
                    None => Outcome::Passed.into(),
                }
            }
        },
        Theorem::NilpotentInvariance => {
            let (Some(v), Some(x)) = (v, s.x.as_ref()) else {
                return Outcome::NotQualified.into();
            };
            match alg.vandermonde_bracket_check(v, x) {
                Ok(VandermondeOutcome::Verified) => Outcome::Passed.into(),
                Ok(VandermondeOutcome::Failed { .. }) => Outcome::Violated("[x,V] ⊆ V".into()).into(),
                Ok(VandermondeOutcome::SkippedHypothesis { .. }) => Outcome::Skipped.into(),
                Ok(VandermondeOutcome::PreconditionViolated { .. }) | Err(_) => Outcome::NotQualified.into(),
            }
        }
        Theorem::NilpotentCommutators => {
            let n = &f.nil.n_span;
            require(&[("[N⁺,N⁺] ⊆ N⁺", br(n, n).leq(n))]).into()
        }
        Theorem::NilSpans => {
            let nil = &f.nil;
            let witnesses_ok = nil.fn2_witnesses.iter().all(|(y, z)| {
                let x = alg.mul_raw(y, z);
                alg.mul_raw(z, y).is_zero() && alg.mul_raw(&x, &x).is_zero()
            });
            let auts: Vec<InnerAutomorphism> = match &f.unit_generators {
                Some(g) => g.clone(),
                None => f.square_zero_units.iter().chain(&f.nilpotent_units).cloned().collect(),
            };
            let invariant = [&nil.n2_span, &nil.n_span, &nil.fn2_span]
                .iter()
                .all(|s| alg.is_invariant(s, &f.unit, &auts));
            let outcome = require(&[
                ("FN₂⁺ ⊆ N₂⁺", nil.fn2_span.leq(&nil.n2_span)),
                ("N₂⁺ ⊆ N⁺", nil.n2_span.leq(&nil.n_span)),
                ("FN₂⁺ ⊆ [R,R]", nil.fn2_span.leq(rr)),
                ("factorization witnesses", witnesses_ok),
                ("spans invariant under inner automorphisms", invariant),
            ]);
            let finding = (nil.fn2_span != nil.n2_span).then(|| {
                (
                    "fn2-proper-in-n2".to_string(),
                    format!(
                        "FN₂(R)⁺ has dimension {} inside N₂(R)⁺ of dimension {}",
                        nil.fn2_span.dim(),
                        nil.n2_span.dim()
                    ),
                )
            });
            Eval { outcome, finding }
        }
        Theorem::SquareZeroFullness => {
            let fn2 = &f.nil.fn2_span;
            let conds = [
                named("N₂ full", f.nil.n2_is_full),
                named("FN₂ full", full(fn2)),
                named("FN₂ fully noncentral", f.fully_noncentral(fn2)),
            ];
            match equivalent(&conds) {
                Some(msg) => Outcome::Violated(msg).into(),
                None => Outcome::Passed.into(),
            }
        }
        Theorem::CommutatorsFn2 => {
            let equal = *rr == f.nil.fn2_span;
            let exceptional_case = f.prime_cofinal() == Some(true)
                && f.nonexceptional_cofinal() == Some(false)
                && f.nil.commutators_in_n2span
                && f.nil.n2_is_full;
            let finding = exceptional_case.then(|| {
                (
                    "exceptional-cofinal-fn2".to_string(),
                    format!("prime cofinal with exceptional primes; [R,R] = FN₂(R)⁺ is {equal}"),
                )
            });
            Eval {
                outcome: require(&[("[R,R] = FN₂⁺", equal)]),
                finding,
            }
        }
        Theorem::CommutatorsN2Fn2 => {
            let conds = [
                named("[R,R] ⊆ N₂⁺", f.nil.commutators_in_n2span),
                named("[R,R] = FN₂⁺", *rr == f.nil.fn2_span),
            ];
            match equivalent(&conds) {
                Some(msg) => Outcome::Violated(msg).into(),
                None => Outcome::Passed.into(),
            }
        }
    }
}

fn prime_quotient_check(pq: &PrimeQuotient, v: &Subspace) -> Outcome {
    let q = &pq.quotient.algebra;
    let w = pq.quotient.project_subspace(v);
    let qr = q.whole_space();
    if !q.bracket_space(&pq.commutators, &w).leq(&w) || q.bracket_space(&qr, &w).is_zero() {
        return Outcome::NotQualified;
    }
    let ds: Vec<Subspace> = (0..=3).map(|n| q.derived(&w, n)).collect();
    for m in 1..=3 {
        for n in 1..=3 {
            if q.bracket_space(&ds[m], &ds[n]).leq(&pq.center) {
                return Outcome::Violated(format!("[W^({m}),W^({n})] noncentral in R/P"));
            }
        }
    }
    Outcome::Passed
}

fn algebra_witnesses(f: &AlgebraFacts) -> Vec<Witness> {
    vec![
        Witness::subspace("commutators", &f.commutators),
        Witness::subspace("center", &f.center),
        Witness::subspace("n2-span", &f.nil.n2_span),
        Witness::subspace("fn2-span", &f.nil.fn2_span),
    ]
}

pub(super) fn run(
    t: Theorem,
    f: &AlgebraFacts,
    config: &SamplerConfig,
    search_cap: usize,
) -> (TheoremVerdict, Vec<Finding>) {
    let hyp = hypothesis(t, f);
    let mut verdict = TheoremVerdict {
        theorem: t.id().to_string(),
        algebra: f.id.clone(),
        hypothesis: hyp.clone(),
        conclusion: ConclusionStatus::NotEvaluated,
        samples: 0,
        qualified: 0,
        skipped: 0,
        searched: None,
        counterexample_count: 0,
        counterexamples: Vec::new(),
        elapsed_us: None,
    };
    let mut findings: Vec<Finding> = Vec::new();
    let mut evaluated = false;
    if matches!(hyp, HypothesisStatus::Skipped(_)) || config.count == 0 {
        return (verdict, findings);
    }
    let record = |verdict: &mut TheoremVerdict,
                      findings: &mut Vec<Finding>,
                      eval: Eval,
                      source: CounterexampleSource,
                      idx: Option<usize>,
                      witnesses: &dyn Fn() -> Vec<Witness>| {
        if let Some((kind, detail)) = eval.finding {
            if !findings.iter().any(|x| x.kind == kind) {
                let context = match &hyp {
                    HypothesisStatus::Holds => String::from("hypotheses hold"),
                    HypothesisStatus::Fails(why) => format!("hypotheses fail: {why}"),
                    HypothesisStatus::Skipped(why) => format!("hypotheses skipped: {why}"),
                };
                findings.push(Finding {
                    algebra: f.id.clone(),
                    theorem: t.id().to_string(),
                    kind,
                    detail: format!("{detail} ({context})"),
                    witnesses: witnesses(),
                });
            }
        }
        match eval.outcome {
            Outcome::NotQualified => {}
            Outcome::Skipped => verdict.skipped += 1,
            Outcome::Passed => verdict.qualified += 1,
            Outcome::Violated(condition) => {
                verdict.qualified += 1;
                verdict.counterexample_count += 1;
                let stored = verdict.counterexamples.iter().filter(|c| c.source == source).count();
                if stored < MAX_STORED_COUNTEREXAMPLES {
                    verdict.counterexamples.push(Counterexample {
                        source,
                        sample: idx,
                        condition,
                        witnesses: witnesses(),
                    });
                }
            }
        }
    };

    if t.is_algebra_level() || t == Theorem::ZeroProductBalanced {
        let eval = evaluate(t, f, &Sample::default());
        record(&mut verdict, &mut findings, eval, CounterexampleSource::Algebra, None, &|| {
            algebra_witnesses(f)
        });
        evaluated = true;
    }
    if !t.is_algebra_level() && hypothesis_allows_sampling(t, &hyp) {
        let mut sampler = SubspaceSampler::new(config.seed, &f.id, t.id());
        for idx in 0..config.count {
            let sample = draw(t, f, config, &mut sampler, idx);
            let eval = evaluate(t, f, &sample);
            verdict.samples += 1;
            record(&mut verdict, &mut findings, eval, CounterexampleSource::Sample, Some(idx), &|| {
                sample.witnesses()
            });
        }
        evaluated = true;
    }
    if matches!(hyp, HypothesisStatus::Fails(_)) && t.searchable() {
        if let Some(all) = all_subspaces(f.algebra.field(), f.algebra.dim(), search_cap) {
            verdict.searched = Some(all.len());
            for v in all {
                let sample = Sample::single(v);
                let eval = evaluate(t, f, &sample);
                record(&mut verdict, &mut findings, eval, CounterexampleSource::Search, None, &|| {
                    sample.witnesses()
                });
            }
            evaluated = true;
        }
    }
    verdict.conclusion = if verdict.counterexample_count > 0 {
        ConclusionStatus::Counterexample
    } else if evaluated {
        ConclusionStatus::Verified
    } else {
        ConclusionStatus::NotEvaluated
    };
    (verdict, findings)
}

/// Sampling needs data that a failing hypothesis may not provide.
fn hypothesis_allows_sampling(t: Theorem, hyp: &HypothesisStatus) -> bool {
    !matches!(
        (t, hyp),
        (_, HypothesisStatus::Skipped(_))
            | (Theorem::PrimeQuotientDerived | Theorem::NilpotentInvariance, HypothesisStatus::Fails(_))
    )
}

pub(super) fn replay(t: Theorem, f: &AlgebraFacts, cex: &Counterexample) -> Result<bool, Error> {
    let sample = match cex.source {
        CounterexampleSource::Algebra => Sample::default(),
        _ => Sample::from_witnesses(f, &cex.witnesses)?,
    };
    Ok(matches!(evaluate(t, f, &sample).outcome, Outcome::Violated(_)))
}
