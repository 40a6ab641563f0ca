//! Brute-force enumeration of cliques with predicate counting, the
//! registry of expected dimension sequences, the minimal-generating-set
//! span computation, and the dimension checks for the magmas that
//! reconstruct previously known operads.
//!
//! Counting enumerates solid-arc patterns rather than full labelings:
//! every statistic a family constrains depends only on which arcs are
//! solid, so each pattern accounts for `(m - 1)^s` cliques at once and
//! monotone violations prune whole subtrees.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One};
use serde::Serialize;

use crate::clique::{stats_of_solid_arcs, ArcPair, Clique};
use crate::families::{FamilyError, OperadFamily};
use crate::linalg::RowReducer;
use crate::magma::UnitaryMagma;
use crate::noncrossing::nc_dim;
use crate::operad::{all_arcs, all_cliques, Failure, Report};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumError {
    NotFinite(String),
    GuardExceeded { size: String, limit: u64 },
    Family(FamilyError),
}

impl fmt::Display for EnumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumError::NotFinite(m) => write!(f, "enumeration requires a finite magma, got {m}"),
            EnumError::GuardExceeded { size, limit } => write!(
                f,
                "space of {size} cliques exceeds the enumeration guard of {limit}; raise the guard explicitly to proceed"
            ),
            EnumError::Family(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for EnumError {}

impl From<FamilyError> for EnumError {
    fn from(e: FamilyError) -> Self {
        EnumError::Family(e)
    }
}

/// Resource guard for enumeration entry points. The default refuses
/// spaces beyond ten million cliques.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumGuard {
    limit: Option<u64>,
}

impl Default for EnumGuard {
    fn default() -> Self {
        EnumGuard {
            limit: Some(10_000_000),
        }
    }
}

impl EnumGuard {
    pub fn with_limit(limit: u64) -> EnumGuard {
        EnumGuard { limit: Some(limit) }
    }

    pub fn unlimited() -> EnumGuard {
        EnumGuard { limit: None }
    }

    pub fn limit(&self) -> Option<u64> {
        self.limit
    }

    fn check(&self, magma: &UnitaryMagma, arity: u32) -> Result<(), EnumError> {
        let m = magma
            .cardinality()
            .ok_or_else(|| EnumError::NotFinite(magma.name().into()))?;
        if let Some(limit) = self.limit {
            match space_size(m as u64, arity) {
                Some(size) if size <= limit => Ok(()),
                Some(size) => Err(EnumError::GuardExceeded {
                    size: size.to_string(),
                    limit,
                }),
                None => Err(EnumError::GuardExceeded {
                    size: format!("more than {}", u64::MAX),
                    limit,
                }),
            }
        } else {
            Ok(())
        }
    }
}

/// `m^binom(n+1, 2)`, the number of cliques of arity `n`, when it fits.
pub fn space_size(m: u64, arity: u32) -> Option<u64> {
    let arcs = arity * (arity + 1) / 2;
    let mut acc: u64 = 1;
    for _ in 0..arcs {
        acc = acc.checked_mul(m)?;
    }
    Some(acc)
}

/// Exact count of this arity's cliques satisfying the predicate, by
/// depth-first enumeration of solid-arc patterns in lexicographic order
/// with monotone pruning. `None` counts the whole space.
pub fn enumerate_count(
    magma: &Arc<UnitaryMagma>,
    arity: u32,
    family: Option<&OperadFamily>,
    guard: &EnumGuard,
) -> Result<u64, EnumError> {
    guard.check(magma, arity)?;
    let m = magma.cardinality().unwrap() as u64;
    if arity == 1 {
        return Ok(1);
    }
    let arcs = all_arcs(arity);
    let mut chosen: Vec<ArcPair> = Vec::new();
    let mut total = 0u64;
    pattern_dfs(
        &arcs,
        0,
        arity,
        m,
        family,
        &mut chosen,
        &mut total,
    );
    Ok(total)
}

fn pattern_dfs(
    arcs: &[ArcPair],
    from: usize,
    arity: u32,
    m: u64,
    family: Option<&OperadFamily>,
    chosen: &mut Vec<ArcPair>,
    total: &mut u64,
) {
    // Every extension by solid arcs of index >= `from` starts from the
    // current pattern; count it now with its (m-1)^s labelings.
    *total += (m - 1).pow(chosen.len() as u32);
    for idx in from..arcs.len() {
        chosen.push(arcs[idx]);
        let ok = match family {
            // Monotone statistics: a violated bound stays violated in
            // every extension, so the subtree can be pruned.
            Some(f) => f.member_stats(&stats_of_solid_arcs(arity, chosen)),
            None => true,
        };
        if ok {
            pattern_dfs(arcs, idx + 1, arity, m, family, chosen, total);
        }
        chosen.pop();
    }
}

/// Streams every clique of the arity in canonical order, for the CLI and
/// for exhaustive cross-checks.
pub fn enumerate_stream(
    magma: &Arc<UnitaryMagma>,
    arity: u32,
    guard: &EnumGuard,
) -> Result<Vec<Clique>, EnumError> {
    guard.check(magma, arity)?;
    Ok(all_cliques(magma, arity))
}

/// A registered expected dimension sequence with its OEIS citation.
#[derive(Debug, Clone, Serialize)]
pub struct SequenceEntry {
    pub family: String,
    pub magma: String,
    pub start_arity: u32,
    pub values: Vec<u64>,
    pub citation: String,
}

/// The dimension sequences quoted for the quotient families, all starting
/// at arity 1.
pub fn registered_sequences() -> Vec<SequenceEntry> {
    let entry = |family: &str, magma: &str, values: Vec<u64>, citation: &str| SequenceEntry {
        family: family.into(),
        magma: magma.into(),
        start_arity: 1,
        values,
        citation: citation.into(),
    };
    vec![
        entry("Acy", "D0", vec![1, 7, 38, 291, 2932], "A001858"),
        entry("Nes", "D0", vec![1, 5, 14, 42, 132], "A000108"),
        entry("Inv", "D0", vec![1, 4, 10, 26, 76], "A000085"),
        entry("Inv", "D1", vec![1, 7, 25, 81, 331], "A047974"),
        entry("Deg:2", "D0", vec![1, 8, 41, 253, 1858], "A136281"),
        entry("Sch", "D0", vec![1, 1, 3, 11, 45], "A001003"),
        entry("Pat", "D0", vec![1, 7, 34, 206, 1486], "A011800"),
        entry("For", "D0", vec![1, 7, 33, 181, 1083], "A054727"),
        entry("Mot", "D0", vec![1, 4, 9, 21, 51], "A001006"),
        entry("Dis", "D0", vec![1, 1, 3, 6, 13], "A093128"),
        entry("Luc", "D0", vec![1, 4, 7, 11, 18], "A000032"),
        entry("NC", "D0", vec![1, 8, 48, 352, 2880], "A054726"),
    ]
}

fn lookup_sequence(family: &OperadFamily) -> Option<SequenceEntry> {
    registered_sequences().into_iter().find(|e| {
        e.magma == family.magma().name()
            && (e.family == family.name() || {
                // Compare through the canonical form so NC/Cro:0 and
                // Inv/Deg:1 aliases share their registry rows.
                OperadFamily::parse(&e.family, family.magma())
                    .map(|f| f.canonical_name() == family.canonical_name())
                    .unwrap_or(false)
            })
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionRow {
    pub arity: u32,
    pub computed: u64,
    pub expected: Option<u64>,
}

impl DimensionRow {
    pub fn matches(&self) -> bool {
        self.expected.is_none_or(|e| e == self.computed)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionTable {
    pub family: String,
    pub magma: String,
    pub citation: Option<String>,
    pub rows: Vec<DimensionRow>,
}

impl DimensionTable {
    pub fn verdict(&self) -> bool {
        self.rows.iter().all(|r| r.matches())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("arity,computed,expected,match\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.arity,
                r.computed,
                r.expected.map_or(String::new(), |e| e.to_string()),
                r.matches()
            ));
        }
        out.push_str(&format!("match: {}\n", self.verdict()));
        out
    }
}

/// Computes the family's dimensions for arities `1..=n_max` and aligns
/// them against the registered sequence, flagging every mismatch.
pub fn dimension_table(
    family: &OperadFamily,
    n_max: u32,
    guard: &EnumGuard,
) -> Result<DimensionTable, EnumError> {
    let expected = lookup_sequence(family);
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let computed = enumerate_count(family.magma(), n, Some(family), guard)?;
        let exp = expected.as_ref().and_then(|e| {
            if n >= e.start_arity {
                e.values.get((n - e.start_arity) as usize).copied()
            } else {
                None
            }
        });
        rows.push(DimensionRow {
            arity: n,
            computed,
            expected: exp,
        });
    }
    Ok(DimensionTable {
        family: family.name().into(),
        magma: family.magma().name().into(),
        citation: expected.map(|e| e.citation),
        rows,
    })
}

/// Membership in the minimal generating set of the full clique operad:
/// every diagonal of the clique, solid or not, is crossed by some solid
/// diagonal. All arity-2 cliques qualify vacuously.
pub fn in_generating_set(p: &Clique) -> bool {
    let n = p.arity();
    let solid_diagonals = p.solid_diagonals();
    all_arcs(n)
        .into_iter()
        .filter(|a| p.is_diagonal(*a))
        .all(|d| {
            solid_diagonals
                .iter()
                .any(|s| crate::clique::arcs_cross(d, *s))
        })
}

#[derive(Debug, Clone, Serialize)]
pub struct SpanResult {
    pub arity: u32,
    /// Dimension of the span of all compositions of lower-arity cliques.
    pub span_dim: usize,
    /// Number of cliques satisfying the generating-set predicate.
    pub generator_count: usize,
    pub total_dim: u64,
    /// True when the span and the generators are complementary: together
    /// they span, and no generator lies in the span.
    pub verdict: bool,
}

/// Row-reduces the span of `{p o_i q}` over all splittings into smaller
/// arities inside the arity-`n` component, and checks it is a complement
/// of the generating-set cliques.
pub fn generating_span(
    magma: &Arc<UnitaryMagma>,
    n: u32,
    guard: &EnumGuard,
) -> Result<SpanResult, EnumError> {
    guard.check(magma, n)?;
    let basis = all_cliques(magma, n);
    let column: BTreeMap<&Clique, usize> = basis.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut reducer = RowReducer::new();
    for a in 2..n {
        let b = n + 1 - a;
        if b < 2 || b >= n {
            continue;
        }
        let ps = all_cliques(magma, a);
        let qs = all_cliques(magma, b);
        for p in &ps {
            for i in 1..=a {
                for q in &qs {
                    let r = p.compose(i, q).unwrap();
                    reducer.insert(vec![(column[&r], BigRational::one())]);
                }
            }
        }
    }
    let span_dim = reducer.rank();
    let generators: Vec<&Clique> = basis.iter().filter(|p| in_generating_set(p)).collect();
    let mut extended = reducer.clone();
    let mut independent = true;
    for g in &generators {
        if !extended.insert(vec![(column[*g], BigRational::one())]) {
            independent = false;
        }
    }
    let total_dim = basis.len() as u64;
    let verdict =
        independent && extended.rank() as u64 == total_dim && span_dim + generators.len() == basis.len();
    Ok(SpanResult {
        arity: n,
        span_dim,
        generator_count: generators.len(),
        total_dim,
        verdict,
    })
}

/// Dimension and closure checks for the magmas reconstructing the operads
/// of bicolored noncrossing configurations and of (double) multi-tildes.
pub fn reconstruction_checks() -> Report {
    let mut report = Report::new("reconstruction");
    let bnc = UnitaryMagma::bnc();

    // Noncrossing configurations over the three-element magma whose
    // boundary arcs are all solid.
    let boundary_solid = |p: &Clique| -> bool {
        let n = p.arity();
        let stats = p.stats();
        stats.crossing == 0
            && (1..=n).all(|i| p.is_solid(i, i + 1))
            && p.is_solid(1, n + 1)
    };
    let expected_counts = [(2u32, 8u64), (3, 80), (4, 992)];
    for (n, expected) in expected_counts {
        let count = all_cliques(&bnc, n)
            .iter()
            .filter(|p| boundary_solid(p))
            .count() as u64;
        report.record(count == expected, || Failure {
            inputs: format!("boundary-solid noncrossing count over {} at arity {n}", bnc.name()),
            expected: expected.to_string(),
            got: count.to_string(),
        });
    }
    // Closure: composing boundary-solid configurations keeps the boundary
    // solid (glued arcs become diagonals) and noncrossing.
    let members: Vec<Clique> = (2..=3)
        .flat_map(|n| all_cliques(&bnc, n))
        .filter(|p| boundary_solid(p))
        .collect();
    for p in &members {
        for q in &members {
            for i in 1..=p.arity() {
                let r = p.compose(i, q).unwrap();
                report.record(boundary_solid(&r), || Failure {
                    inputs: format!(
                        "closure of {} o_{i} {}",
                        p.to_json_string(),
                        q.to_json_string()
                    ),
                    expected: "boundary-solid noncrossing".into(),
                    got: r.to_json_string(),
                });
            }
        }
    }

    // Full clique-operad dimensions over the multi-tilde magmas.
    let guard = EnumGuard::default();
    for (magma, base) in [(UnitaryMagma::mt(), 2u64), (UnitaryMagma::dmt(), 4u64)] {
        for n in 2..=4u32 {
            let count = enumerate_count(&magma, n, None, &guard).unwrap();
            let expected = space_size(base, n).unwrap();
            report.record(count == expected, || Failure {
                inputs: format!("dimension of the clique operad over {} at arity {n}", magma.name()),
                expected: expected.to_string(),
                got: count.to_string(),
            });
        }
    }
    report.finish();
    report
}

/// Dimension of the noncrossing suboperad by enumeration, for
/// cross-checking the closed formula.
pub fn nc_dim_by_enumeration(
    magma: &Arc<UnitaryMagma>,
    n: u32,
    guard: &EnumGuard,
) -> Result<u64, EnumError> {
    let family = OperadFamily::parse("NC", magma)?;
    enumerate_count(magma, n, Some(&family), guard)
}

/// Asserts the closed dimension formula against enumeration on a small
/// range; used by the verification suites.
pub fn check_nc_dims(magma: &Arc<UnitaryMagma>, n_max: u32) -> Report {
    let mut report = Report::new("nc-dimensions");
    let m = magma.cardinality().expect("finite magma") as u64;
    let guard = EnumGuard::default();
    for n in 1..=n_max {
        let enumerated = nc_dim_by_enumeration(magma, n, &guard).unwrap();
        let formula = nc_dim(m, n);
        report.record(BigInt::from(enumerated) == formula, || Failure {
            inputs: format!("noncrossing dimension over {} at arity {n}", magma.name()),
            expected: formula.to_string(),
            got: enumerated.to_string(),
        });
    }
    report.finish();
    report
}
