//! Linear spans of cliques over exact rationals, the linearized partial
//! composition, the functorial relabeling along magma morphisms, and the
//! verifiers for the operad axioms, the basic-operad criterion, and the
//! cyclic structure.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigRational, One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::clique::{Clique, CliqueError};
use crate::magma::{Element, MagmaError, MagmaMorphism, UnitaryMagma};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum BasisTag {
    #[serde(rename = "fund")]
    Fundamental,
    H,
    K,
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisTag::Fundamental => write!(f, "fund"),
            BasisTag::H => write!(f, "H"),
            BasisTag::K => write!(f, "K"),
        }
    }
}

impl BasisTag {
    pub fn parse(s: &str) -> Option<BasisTag> {
        match s {
            "fund" | "fundamental" => Some(BasisTag::Fundamental),
            "H" => Some(BasisTag::H),
            "K" => Some(BasisTag::K),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OperadError {
    BasisMismatch { expected: BasisTag, got: BasisTag },
    ArityMismatch { expected: u32, got: u32 },
    LengthMismatch { expected: usize, got: usize },
    MagmaMismatch { left: String, right: String },
    InvalidMorphism(String),
    Clique(CliqueError),
}

impl fmt::Display for OperadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperadError::BasisMismatch { expected, got } => {
                write!(f, "basis mismatch: expected {expected}, got {got}")
            }
            OperadError::ArityMismatch { expected, got } => {
                write!(f, "arity mismatch: expected {expected}, got {got}")
            }
            OperadError::LengthMismatch { expected, got } => {
                write!(f, "argument list has length {got}, expected {expected}")
            }
            OperadError::MagmaMismatch { left, right } => {
                write!(f, "magma mismatch: {left} vs {right}")
            }
            OperadError::InvalidMorphism(m) => write!(f, "invalid magma morphism: {m}"),
            OperadError::Clique(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for OperadError {}

impl From<CliqueError> for OperadError {
    fn from(e: CliqueError) -> Self {
        OperadError::Clique(e)
    }
}

impl From<MagmaError> for OperadError {
    fn from(e: MagmaError) -> Self {
        OperadError::InvalidMorphism(e.to_string())
    }
}

/// A formal linear combination of same-arity cliques with exact rational
/// coefficients, tagged with the basis its terms are expressed in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinComb {
    magma: Arc<UnitaryMagma>,
    arity: u32,
    basis: BasisTag,
    terms: BTreeMap<Clique, BigRational>,
}

impl LinComb {
    pub fn zero(magma: &Arc<UnitaryMagma>, arity: u32, basis: BasisTag) -> LinComb {
        LinComb {
            magma: Arc::clone(magma),
            arity,
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(clique: Clique, basis: BasisTag) -> LinComb {
        let mut terms = BTreeMap::new();
        let magma = Arc::clone(clique.magma());
        let arity = clique.arity();
        terms.insert(clique, BigRational::one());
        LinComb {
            magma,
            arity,
            basis,
            terms,
        }
    }

    pub fn from_terms(
        magma: &Arc<UnitaryMagma>,
        arity: u32,
        basis: BasisTag,
        terms: impl IntoIterator<Item = (Clique, BigRational)>,
    ) -> Result<LinComb, OperadError> {
        let mut out = LinComb::zero(magma, arity, basis);
        for (c, k) in terms {
            out.add_term(c, k)?;
        }
        Ok(out)
    }

    /// Adds `coeff * clique`, dropping the term if the total vanishes.
    pub fn add_term(&mut self, clique: Clique, coeff: BigRational) -> Result<(), OperadError> {
        if clique.arity() != self.arity {
            return Err(OperadError::ArityMismatch {
                expected: self.arity,
                got: clique.arity(),
            });
        }
        if clique.magma() != &self.magma {
            return Err(OperadError::MagmaMismatch {
                left: self.magma.name().into(),
                right: clique.magma().name().into(),
            });
        }
        if coeff.is_zero() {
            return Ok(());
        }
        match self.terms.entry(clique) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
        Ok(())
    }

    pub fn magma(&self) -> &Arc<UnitaryMagma> {
        &self.magma
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Clique, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, c: &Clique) -> BigRational {
        self.terms.get(c).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, k: &BigRational) -> LinComb {
        if k.is_zero() {
            return LinComb::zero(&self.magma, self.arity, self.basis);
        }
        LinComb {
            magma: Arc::clone(&self.magma),
            arity: self.arity,
            basis: self.basis,
            terms: self.terms.iter().map(|(c, v)| (c.clone(), v * k)).collect(),
        }
    }

    pub fn add(&self, other: &LinComb) -> Result<LinComb, OperadError> {
        if self.basis != other.basis {
            return Err(OperadError::BasisMismatch {
                expected: self.basis,
                got: other.basis,
            });
        }
        if self.arity != other.arity {
            return Err(OperadError::ArityMismatch {
                expected: self.arity,
                got: other.arity,
            });
        }
        let mut out = self.clone();
        for (c, k) in other.terms() {
            out.add_term(c.clone(), k.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LinComb) -> Result<LinComb, OperadError> {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Re-tags the combination; used by the basis conversions which account
    /// for the change of meaning themselves.
    pub(crate) fn with_basis(mut self, basis: BasisTag) -> LinComb {
        self.basis = basis;
        self
    }

    /// Canonical JSON value: terms sorted by clique, coefficients as exact
    /// fraction strings.
    pub fn to_json(&self) -> LinCombJson {
        LinCombJson {
            magma: self.magma.name().to_string(),
            arity: self.arity,
            basis: self.basis.to_string(),
            terms: self
                .terms
                .iter()
                .map(|(c, k)| TermJson {
                    coeff: k.to_string(),
                    clique: c.to_json(),
                })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("lincomb serialization cannot fail")
    }

    pub fn from_json(json: &LinCombJson) -> Result<LinComb, OperadError> {
        let magma = UnitaryMagma::builtin(&json.magma)
            .map_err(|e| OperadError::Clique(CliqueError::Json(e.to_string())))?;
        let basis = BasisTag::parse(&json.basis).ok_or(OperadError::Clique(CliqueError::Json(
            format!("unknown basis tag {}", json.basis),
        )))?;
        let mut out = LinComb::zero(&magma, json.arity, basis);
        for term in &json.terms {
            let coeff: BigRational = term.coeff.parse().map_err(|_| {
                OperadError::Clique(CliqueError::Json(format!(
                    "bad coefficient {}",
                    term.coeff
                )))
            })?;
            let clique = Clique::from_json(&term.clique)?;
            out.add_term(clique, coeff)?;
        }
        Ok(out)
    }

    pub fn from_json_str(s: &str) -> Result<LinComb, OperadError> {
        let json: LinCombJson = serde_json::from_str(s)
            .map_err(|e| OperadError::Clique(CliqueError::Json(e.to_string())))?;
        LinComb::from_json(&json)
    }
}

/// JSON interchange form of a linear combination.
#[derive(Debug, Clone, Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct LinCombJson {
    pub magma: String,
    pub arity: u32,
    pub basis: String,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub coeff: String,
    pub clique: crate::clique::CliqueJson,
}

/// Bilinear extension of the clique partial composition. Inputs must be in
/// the fundamental basis; convert H/K combinations first.
pub fn lin_compose(f: &LinComb, i: u32, g: &LinComb) -> Result<LinComb, OperadError> {
    for side in [f, g] {
        if side.basis() != BasisTag::Fundamental {
            return Err(OperadError::BasisMismatch {
                expected: BasisTag::Fundamental,
                got: side.basis(),
            });
        }
    }
    if f.magma() != g.magma() {
        return Err(OperadError::MagmaMismatch {
            left: f.magma().name().into(),
            right: g.magma().name().into(),
        });
    }
    let mut out = LinComb::zero(
        f.magma(),
        f.arity() + g.arity() - 1,
        BasisTag::Fundamental,
    );
    for (p, a) in f.terms() {
        for (q, b) in g.terms() {
            out.add_term(p.compose(i, q)?, a * b)?;
        }
    }
    Ok(out)
}

/// Full composition `f(g_1, ..., g_n)`, computed as the right-to-left fold
/// of partial compositions.
pub fn full_compose(f: &LinComb, args: &[LinComb]) -> Result<LinComb, OperadError> {
    if args.len() != f.arity() as usize {
        return Err(OperadError::LengthMismatch {
            expected: f.arity() as usize,
            got: args.len(),
        });
    }
    let mut acc = f.clone();
    for (idx, g) in args.iter().enumerate().rev() {
        acc = lin_compose(&acc, (idx + 1) as u32, g)?;
    }
    Ok(acc)
}

/// Arc-wise relabeling along a magma morphism, extended linearly.
pub fn map_functor(phi: &MagmaMorphism, f: &LinComb) -> Result<LinComb, OperadError> {
    phi.validate()?;
    if f.magma() != phi.source() {
        return Err(OperadError::MagmaMismatch {
            left: f.magma().name().into(),
            right: phi.source().name().into(),
        });
    }
    let mut out = LinComb::zero(phi.target(), f.arity(), f.basis());
    for (p, k) in f.terms() {
        out.add_term(map_clique(phi, p)?, k.clone())?;
    }
    Ok(out)
}

/// Relabels a single clique along a morphism.
pub fn map_clique(phi: &MagmaMorphism, p: &Clique) -> Result<Clique, OperadError> {
    let mut labels = Vec::with_capacity(p.solid_arcs().len());
    for (arc, l) in p.solid_arcs() {
        labels.push((*arc, phi.apply(l)?));
    }
    Ok(Clique::new(phi.target(), p.arity(), labels)?)
}

/// A single counterexample found by a verifier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    pub inputs: String,
    pub expected: String,
    pub got: String,
}

/// Outcome of a verification run. The verdict holds exactly when no
/// failures were recorded.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub name: String,
    pub checked: u64,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub verdict: bool,
}

impl Report {
    pub fn new(name: &str) -> Report {
        Report {
            name: name.to_string(),
            checked: 0,
            failures: Vec::new(),
            notes: Vec::new(),
            verdict: true,
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn record(&mut self, ok: bool, inputs: impl Fn() -> Failure) {
        self.checked += 1;
        if !ok {
            self.failures.push(inputs());
            self.verdict = false;
        }
    }

    pub fn merge_failures(&mut self, checked: u64, mut failures: Vec<Failure>) {
        self.checked += checked;
        self.failures.append(&mut failures);
        self.finish();
    }

    /// Sorts failures canonically so merged parallel runs are deterministic.
    pub fn finish(&mut self) {
        self.failures.sort();
        self.failures.dedup();
        self.verdict = self.failures.is_empty();
    }

    pub fn verdict(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "check {}: {} ({} cases)\n",
            self.name,
            if self.verdict() { "pass" } else { "FAIL" },
            self.checked
        ));
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        for f in self.failures.iter().take(5) {
            out.push_str(&format!(
                "  failure: inputs={} expected={} got={}\n",
                f.inputs, f.expected, f.got
            ));
        }
        if self.failures.len() > 5 {
            out.push_str(&format!("  ... {} more failures\n", self.failures.len() - 5));
        }
        out
    }
}

/// How `verify_operad_axioms` explores the space of cliques.
#[derive(Debug, Clone, Copy)]
pub enum AxiomMode {
    /// Every clique of arity up to the bound; requires a finite magma.
    Exhaustive,
    /// Seeded random cliques with integer labels drawn from
    /// `[-window, window]`; for the integers.
    Sampled { samples: u32, seed: u64, window: i64 },
}

/// All cliques of the given arity over a finite magma, in lexicographic
/// label order.
pub fn all_cliques(magma: &Arc<UnitaryMagma>, arity: u32) -> Vec<Clique> {
    if arity == 1 {
        return vec![Clique::unit(magma)];
    }
    let elements = magma
        .elements()
        .expect("exhaustive clique generation needs a finite magma");
    let arcs: Vec<(u32, u32)> = all_arcs(arity);
    let mut out = Vec::new();
    let mut counter = vec![0usize; arcs.len()];
    loop {
        let labels: Vec<((u32, u32), Element)> = arcs
            .iter()
            .zip(&counter)
            .map(|(arc, idx)| (*arc, elements[*idx].clone()))
            .collect();
        out.push(Clique::new(magma, arity, labels).expect("generated labels are valid"));
        // Odometer increment, last arc fastest.
        let mut pos = arcs.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            counter[pos] += 1;
            if counter[pos] < elements.len() {
                break;
            }
            counter[pos] = 0;
        }
    }
}

/// Arcs of an arity-`n` clique in lexicographic order.
pub fn all_arcs(arity: u32) -> Vec<(u32, u32)> {
    let top = arity + 1;
    (1..=top)
        .flat_map(|x| (x + 1..=top).map(move |y| (x, y)))
        .collect()
}

/// Cliques of every arity from 1 to the bound.
pub fn cliques_up_to(magma: &Arc<UnitaryMagma>, max_arity: u32) -> Vec<Clique> {
    (1..=max_arity)
        .flat_map(|n| all_cliques(magma, n))
        .collect()
}

fn random_clique(magma: &Arc<UnitaryMagma>, arity: u32, window: i64, rng: &mut ChaCha8Rng) -> Clique {
    if arity == 1 {
        return Clique::unit(magma);
    }
    let labels: Vec<((u32, u32), Element)> = all_arcs(arity)
        .into_iter()
        .map(|arc| {
            let v = rng.gen_range(-window..=window);
            (arc, Element::Int(v.into()))
        })
        .collect();
    Clique::new(magma, arity, labels).expect("sampled labels are valid")
}

/// Checks the sequential, parallel, and unit laws of the partial
/// composition, exhaustively over finite magmas or on seeded samples over
/// the integers.
pub fn verify_operad_axioms(
    magma: &Arc<UnitaryMagma>,
    max_arity: u32,
    mode: AxiomMode,
) -> Report {
    let mut report = Report::new("operad-axioms");
    let triples: Vec<(Clique, Clique, Clique)> = match mode {
        AxiomMode::Exhaustive => {
            report.note(format!(
                "exhaustive over {} up to arity {max_arity}",
                magma.name()
            ));
            let all = cliques_up_to(magma, max_arity);
            let mut triples = Vec::new();
            for p in &all {
                for q in &all {
                    for r in &all {
                        triples.push((p.clone(), q.clone(), r.clone()));
                    }
                }
            }
            triples
        }
        AxiomMode::Sampled {
            samples,
            seed,
            window,
        } => {
            report.note(format!(
                "sampled over {}: {samples} samples, seed {seed}, labels in [-{window}, {window}], arities <= {max_arity}",
                magma.name()
            ));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples)
                .map(|_| {
                    let np = rng.gen_range(2..=max_arity);
                    let nq = rng.gen_range(2..=max_arity);
                    let nr = rng.gen_range(2..=max_arity);
                    (
                        random_clique(magma, np, window, &mut rng),
                        random_clique(magma, nq, window, &mut rng),
                        random_clique(magma, nr, window, &mut rng),
                    )
                })
                .collect()
        }
    };

    let unit = Clique::unit(magma);
    let results: Vec<(u64, Vec<Failure>)> = triples
        .par_iter()
        .map(|(p, q, r)| {
            let mut checked = 0u64;
            let mut failures = Vec::new();
            let n = p.arity();
            let m = q.arity();
            // Sequential law.
            for i in 1..=n {
                for j in 1..=m {
                    checked += 1;
                    let lhs = p.compose(i, q).unwrap().compose(i + j - 1, r).unwrap();
                    let rhs = p.compose(i, &q.compose(j, r).unwrap()).unwrap();
                    if lhs != rhs {
                        failures.push(Failure {
                            inputs: format!(
                                "sequential p={} q={} r={} i={i} j={j}",
                                p.to_json_string(),
                                q.to_json_string(),
                                r.to_json_string()
                            ),
                            expected: rhs.to_json_string(),
                            got: lhs.to_json_string(),
                        });
                    }
                }
            }
            // Parallel law.
            for i in 1..=n {
                for j in (i + 1)..=n {
                    checked += 1;
                    let lhs = p.compose(i, q).unwrap().compose(j + m - 1, r).unwrap();
                    let rhs = p.compose(j, r).unwrap().compose(i, q).unwrap();
                    if lhs != rhs {
                        failures.push(Failure {
                            inputs: format!(
                                "parallel p={} q={} r={} i={i} j={j}",
                                p.to_json_string(),
                                q.to_json_string(),
                                r.to_json_string()
                            ),
                            expected: rhs.to_json_string(),
                            got: lhs.to_json_string(),
                        });
                    }
                }
            }
            // Unit law on p alone.
            checked += 1;
            let left_unit = unit.compose(1, p).unwrap();
            let right_unit = (1..=n).all(|i| p.compose(i, &unit).unwrap() == *p);
            if left_unit != *p || !right_unit {
                failures.push(Failure {
                    inputs: format!("unit p={}", p.to_json_string()),
                    expected: p.to_json_string(),
                    got: left_unit.to_json_string(),
                });
            }
            (checked, failures)
        })
        .collect();
    for (checked, failures) in results {
        report.merge_failures(checked, failures);
    }
    report.finish();
    report
}

/// Tests injectivity of `x -> x o_i y` for every right operand `y` and
/// position, the set-operad "basic" criterion. The verdict must agree with
/// right cancellability of the magma.
pub fn check_basic(magma: &Arc<UnitaryMagma>, max_arity: u32) -> Report {
    let mut report = Report::new("basic-criterion");
    let all = cliques_up_to(magma, max_arity);
    let props = magma.check_properties();
    report.note(format!(
        "magma {} is {}right cancellable",
        magma.name(),
        if props.right_cancellable { "" } else { "not " }
    ));
    let mut injective_everywhere = true;
    let mut witness_noted = false;
    for y in &all {
        for arity_x in 1..=max_arity {
            let xs: Vec<&Clique> = all.iter().filter(|x| x.arity() == arity_x).collect();
            for i in 1..=arity_x {
                let mut seen: BTreeMap<Clique, &Clique> = BTreeMap::new();
                for x in &xs {
                    report.checked += 1;
                    let image = x.compose(i, y).unwrap();
                    if let Some(prev) = seen.get(&image) {
                        injective_everywhere = false;
                        if !witness_noted {
                            witness_noted = true;
                            report.note(format!(
                                "non-injective pair: {} and {} compose with {} at {} to {}",
                                prev.to_json_string(),
                                x.to_json_string(),
                                y.to_json_string(),
                                i,
                                image.to_json_string()
                            ));
                        }
                    } else {
                        seen.insert(image, x);
                    }
                }
            }
        }
    }
    report.note(format!(
        "composition maps are {}injective on the tested range",
        if injective_everywhere { "" } else { "not " }
    ));
    report.record(
        injective_everywhere == props.right_cancellable,
        || Failure {
            inputs: format!("basic criterion over {}", magma.name()),
            expected: format!("injectivity == right-cancellability ({})", props.right_cancellable),
            got: format!("injectivity = {injective_everywhere}"),
        },
    );
    report.finish();
    report
}

/// The two candidate compatibility laws between rotation and composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CyclicLaw {
    /// `rot(p o_1 q) = rot(q) o_m rot(p)` and
    /// `rot(p o_i q) = rot(p) o_{i-1} q` for `i >= 2`.
    RotatesFirstSlot,
    /// `rot(p o_n q) = rot(q) o_1 rot(p)` and
    /// `rot(p o_i q) = rot(p) o_{i+1} q` for `i < n`.
    RotatesLastSlot,
}

impl CyclicLaw {
    pub fn describe(&self) -> &'static str {
        match self {
            CyclicLaw::RotatesFirstSlot => {
                "rot(p o_1 q) = rot(q) o_m rot(p); rot(p o_i q) = rot(p) o_{i-1} q for i >= 2"
            }
            CyclicLaw::RotatesLastSlot => {
                "rot(p o_n q) = rot(q) o_1 rot(p); rot(p o_i q) = rot(p) o_{i+1} q for i < n"
            }
        }
    }

    fn holds_for(&self, p: &Clique, i: u32, q: &Clique) -> bool {
        let n = p.arity();
        let m = q.arity();
        let lhs = p.compose(i, q).unwrap().rotate();
        match self {
            CyclicLaw::RotatesFirstSlot => {
                if i == 1 {
                    lhs == q.rotate().compose(m, &p.rotate()).unwrap()
                } else {
                    lhs == p.rotate().compose(i - 1, q).unwrap()
                }
            }
            CyclicLaw::RotatesLastSlot => {
                if i == n {
                    lhs == q.rotate().compose(1, &p.rotate()).unwrap()
                } else {
                    lhs == p.rotate().compose(i + 1, q).unwrap()
                }
            }
        }
    }
}

/// Verifies `rot^(n+1) = id` and discovers which cyclic-compatibility law
/// the rotation convention satisfies; the law found is pinned in the
/// report notes.
pub fn check_cyclic(magma: &Arc<UnitaryMagma>, max_arity: u32) -> Report {
    let mut report = Report::new("cyclic-structure");
    report.note("rotation convention: counterclockwise, vertex 1 -> n+1, x -> x-1");
    for n in 1..=max_arity {
        for p in all_cliques(magma, n) {
            let mut r = p.clone();
            for _ in 0..=n {
                r = r.rotate();
            }
            report.record(r == p, || Failure {
                inputs: format!("rot^{} of {}", n + 1, p.to_json_string()),
                expected: p.to_json_string(),
                got: r.to_json_string(),
            });
        }
    }
    let pair_bound = max_arity.min(3);
    let all = cliques_up_to(magma, pair_bound);
    let mut holds = [true, true];
    for (idx, law) in [CyclicLaw::RotatesFirstSlot, CyclicLaw::RotatesLastSlot]
        .iter()
        .enumerate()
    {
        'outer: for p in &all {
            for q in &all {
                for i in 1..=p.arity() {
                    if !law.holds_for(p, i, q) {
                        holds[idx] = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    let law_count: u64 = all
        .iter()
        .map(|p| all.len() as u64 * p.arity() as u64)
        .sum();
    report.checked += law_count;
    match (holds[0], holds[1]) {
        (true, _) => report.note(format!(
            "cyclic law: {}",
            CyclicLaw::RotatesFirstSlot.describe()
        )),
        (false, true) => report.note(format!(
            "cyclic law: {}",
            CyclicLaw::RotatesLastSlot.describe()
        )),
        (false, false) => {
            report.record(false, || Failure {
                inputs: format!(
                    "cyclic compatibility over {} up to arity {pair_bound}",
                    magma.name()
                ),
                expected: "one of the two candidate laws".into(),
                got: "neither law holds for the counterclockwise rotation".into(),
            });
        }
    }
    report.finish();
    report
}

/// The law satisfied by the rotation convention, if any.
pub fn discover_cyclic_law(magma: &Arc<UnitaryMagma>, max_arity: u32) -> Option<CyclicLaw> {
    let all = cliques_up_to(magma, max_arity);
    for law in [CyclicLaw::RotatesFirstSlot, CyclicLaw::RotatesLastSlot] {
        let ok = all.iter().all(|p| {
            all.iter()
                .all(|q| (1..=p.arity()).all(|i| law.holds_for(p, i, q)))
        });
        if ok {
            return Some(law);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(num::BigInt::from_i64(n).unwrap(), num::BigInt::from_i64(d).unwrap())
    }

    fn z() -> Arc<UnitaryMagma> {
        UnitaryMagma::integers()
    }

    fn d0() -> Arc<UnitaryMagma> {
        UnitaryMagma::d_magma(0)
    }

    #[test]
    fn bilinearity_scalars() {
        let p = Clique::parse(&z(), 2, &[(1, 2, "2")]).unwrap();
        let qq = Clique::parse(&z(), 2, &[(1, 3, "3")]).unwrap();
        let f = LinComb::single(p.clone(), BasisTag::Fundamental).scale(&q(2, 1));
        let g = LinComb::single(qq.clone(), BasisTag::Fundamental).scale(&q(3, 1));
        let r = lin_compose(&f, 1, &g).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.coefficient(&p.compose(1, &qq).unwrap()), q(6, 1));
    }

    #[test]
    fn linearity_in_left_argument() {
        let p1 = Clique::parse(&d0(), 2, &[(1, 2, "0")]).unwrap();
        let p2 = Clique::parse(&d0(), 2, &[(2, 3, "0")]).unwrap();
        let g = LinComb::single(Clique::parse(&d0(), 2, &[]).unwrap(), BasisTag::Fundamental);
        let sum = LinComb::single(p1.clone(), BasisTag::Fundamental)
            .add(&LinComb::single(p2.clone(), BasisTag::Fundamental))
            .unwrap();
        let lhs = lin_compose(&sum, 1, &g).unwrap();
        let rhs = lin_compose(&LinComb::single(p1, BasisTag::Fundamental), 1, &g)
            .unwrap()
            .add(&lin_compose(&LinComb::single(p2, BasisTag::Fundamental), 1, &g).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn second_display_as_lincomb() {
        let p = Clique::parse(
            &z(),
            5,
            &[(1, 2, "1"), (1, 5, "-2"), (2, 3, "-2"), (3, 5, "1")],
        )
        .unwrap();
        let qq = Clique::parse(
            &z(),
            3,
            &[(1, 3, "1"), (1, 4, "2"), (2, 4, "1"), (3, 4, "2")],
        )
        .unwrap();
        let r = lin_compose(
            &LinComb::single(p, BasisTag::Fundamental),
            2,
            &LinComb::single(qq, BasisTag::Fundamental),
        )
        .unwrap();
        let expected = Clique::parse(
            &z(),
            7,
            &[
                (1, 2, "1"),
                (1, 7, "-2"),
                (2, 4, "1"),
                (3, 5, "1"),
                (4, 5, "2"),
                (5, 7, "1"),
            ],
        )
        .unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.coefficient(&expected), q(1, 1));
    }

    #[test]
    fn hk_inputs_rejected_by_lin_compose() {
        let f = LinComb::single(Clique::parse(&d0(), 2, &[]).unwrap(), BasisTag::H);
        let g = LinComb::single(Clique::parse(&d0(), 2, &[]).unwrap(), BasisTag::Fundamental);
        assert!(matches!(
            lin_compose(&f, 1, &g).unwrap_err(),
            OperadError::BasisMismatch { .. }
        ));
    }

    #[test]
    fn full_compose_units() {
        let p = Clique::parse(&d0(), 3, &[(1, 4, "0")]).unwrap();
        let f = LinComb::single(p.clone(), BasisTag::Fundamental);
        let u = LinComb::single(Clique::unit(&d0()), BasisTag::Fundamental);
        let r = full_compose(&f, &[u.clone(), u.clone(), u.clone()]).unwrap();
        assert_eq!(r, f);
        let g = LinComb::single(Clique::parse(&d0(), 2, &[(1, 3, "0")]).unwrap(), BasisTag::Fundamental);
        assert_eq!(full_compose(&u, std::slice::from_ref(&g)).unwrap(), g);
        assert!(full_compose(&f, &[u.clone()]).is_err());
    }

    #[test]
    fn full_compose_triangles_over_d0() {
        let t = LinComb::single(Clique::parse(&d0(), 2, &[]).unwrap(), BasisTag::Fundamental);
        let r = full_compose(&t, &[t.clone(), t.clone()]).unwrap();
        let expected = Clique::parse(&d0(), 4, &[]).unwrap();
        assert_eq!(r, LinComb::single(expected, BasisTag::Fundamental));
    }

    #[test]
    fn full_compose_fold_order_independent() {
        let f = LinComb::single(
            Clique::parse(&z(), 2, &[(1, 2, "1"), (1, 3, "2")]).unwrap(),
            BasisTag::Fundamental,
        );
        let g1 = LinComb::single(Clique::parse(&z(), 3, &[(1, 4, "-1")]).unwrap(), BasisTag::Fundamental);
        let g2 = LinComb::single(Clique::parse(&z(), 2, &[(2, 3, "3")]).unwrap(), BasisTag::Fundamental);
        let right_to_left = full_compose(&f, &[g1.clone(), g2.clone()]).unwrap();
        // Left-to-right with the second slot shifted by the first plug.
        let left_to_right = lin_compose(
            &lin_compose(&f, 1, &g1).unwrap(),
            1 + g1.arity(),
            &g2,
        )
        .unwrap();
        assert_eq!(right_to_left, left_to_right);
    }

    #[test]
    fn functor_identity_and_relabeling() {
        let n4 = UnitaryMagma::cyclic(4).unwrap();
        let n2 = UnitaryMagma::cyclic(2).unwrap();
        let phi = MagmaMorphism::from_fn(&n4, &n2, |e| match e {
            Element::Table(i) => Element::Table(i % 2),
            _ => unreachable!(),
        })
        .unwrap();
        let p = Clique::parse(&n4, 2, &[(1, 3, "2")]).unwrap();
        let f = LinComb::single(p, BasisTag::Fundamental);
        let image = map_functor(&phi, &f).unwrap();
        // 2 mod 2 = 0 is the unit, so the arc disappears.
        assert_eq!(
            image,
            LinComb::single(Clique::parse(&n2, 2, &[]).unwrap(), BasisTag::Fundamental)
        );
        let id = MagmaMorphism::from_fn(&n4, &n4, |e| e.clone()).unwrap();
        assert_eq!(map_functor(&id, &f).unwrap(), f);
    }

    #[test]
    fn functoriality_on_compositions() {
        let n4 = UnitaryMagma::cyclic(4).unwrap();
        let n2 = UnitaryMagma::cyclic(2).unwrap();
        let phi = MagmaMorphism::from_fn(&n4, &n2, |e| match e {
            Element::Table(i) => Element::Table(i % 2),
            _ => unreachable!(),
        })
        .unwrap();
        let p = Clique::parse(&n4, 2, &[(1, 2, "3"), (1, 3, "2")]).unwrap();
        let qq = Clique::parse(&n4, 2, &[(1, 3, "1"), (2, 3, "2")]).unwrap();
        for i in 1..=2 {
            let lhs = map_clique(&phi, &p.compose(i, &qq).unwrap()).unwrap();
            let rhs = map_clique(&phi, &p)
                .unwrap()
                .compose(i, &map_clique(&phi, &qq).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn injection_preserved_by_functor() {
        let d0 = d0();
        let d1 = UnitaryMagma::d_magma(1);
        let phi = MagmaMorphism::from_fn(&d0, &d1, |e| e.clone()).unwrap();
        let images: std::collections::BTreeSet<Clique> = all_cliques(&d0, 2)
            .iter()
            .map(|p| map_clique(&phi, p).unwrap())
            .collect();
        assert_eq!(images.len(), 8);
    }

    #[test]
    fn surjection_preserved_by_functor() {
        let n4 = UnitaryMagma::cyclic(4).unwrap();
        let n2 = UnitaryMagma::cyclic(2).unwrap();
        let phi = MagmaMorphism::from_fn(&n4, &n2, |e| match e {
            Element::Table(i) => Element::Table(i % 2),
            _ => unreachable!(),
        })
        .unwrap();
        let images: std::collections::BTreeSet<Clique> = all_cliques(&n4, 2)
            .iter()
            .map(|p| map_clique(&phi, p).unwrap())
            .collect();
        assert_eq!(images.len(), all_cliques(&n2, 2).len());
    }

    #[test]
    fn axioms_exhaustive_d0_arity_2() {
        let report = verify_operad_axioms(&d0(), 2, AxiomMode::Exhaustive);
        assert!(report.verdict(), "{:?}", report.failures.first());
    }

    #[test]
    fn axioms_exhaustive_n2_arity_3() {
        let n2 = UnitaryMagma::cyclic(2).unwrap();
        let report = verify_operad_axioms(&n2, 3, AxiomMode::Exhaustive);
        assert!(report.verdict());
    }

    #[test]
    fn lincomb_json_round_trip() {
        let p = Clique::parse(&d0(), 2, &[(1, 3, "0")]).unwrap();
        let f = LinComb::single(p, BasisTag::K)
            .scale(&q(-3, 2))
            .add(&LinComb::single(Clique::parse(&d0(), 2, &[]).unwrap(), BasisTag::K))
            .unwrap();
        let s = f.to_json_string();
        let back = LinComb::from_json_str(&s).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_json_string(), s);
    }

    #[test]
    fn axioms_sampled_over_z() {
        let report = verify_operad_axioms(
            &z(),
            4,
            AxiomMode::Sampled {
                samples: 50,
                seed: 42,
                window: 3,
            },
        );
        assert!(report.verdict());
    }

    #[test]
    fn basic_check_matches_cancellability() {
        let n2 = UnitaryMagma::cyclic(2).unwrap();
        assert!(check_basic(&n2, 2).verdict());
        let d0 = d0();
        let r = check_basic(&d0, 2).verdict();
        assert!(r, "report must agree with non-cancellability");
        let trivial = UnitaryMagma::cyclic(1).unwrap();
        assert!(check_basic(&trivial, 3).verdict());
    }

    #[test]
    fn cyclic_check_d0() {
        let report = check_cyclic(&d0(), 3);
        assert!(report.verdict(), "{:?}", report.failures.first());
        assert!(report
            .notes
            .iter()
            .any(|n| n.contains("cyclic law")));
        assert_eq!(
            discover_cyclic_law(&d0(), 3),
            Some(CyclicLaw::RotatesFirstSlot)
        );
    }

    #[test]
    fn rotate_unit_fixed() {
        let u = Clique::unit(&d0());
        assert_eq!(u.rotate(), u);
    }

    #[test]
    fn exact_coefficient_denominators() {
        let p = Clique::parse(&d0(), 2, &[]).unwrap();
        let f = LinComb::single(p.clone(), BasisTag::Fundamental).scale(&q(1, 3));
        let g = LinComb::single(p, BasisTag::Fundamental).scale(&q(1, 2));
        let r = lin_compose(&f, 1, &g).unwrap();
        for (_, coeff) in r.terms() {
            assert_eq!(coeff, &q(1, 6));
        }
    }
}
