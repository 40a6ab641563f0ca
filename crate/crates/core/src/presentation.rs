//! The weight-2 part of the free operad on triangles, the quadratic
//! relation space presenting the noncrossing suboperad, its orthogonal
//! complement under the signed duality pairing, and normal-form counting
//! for the oriented rewrite system, which certifies the dimensions.
//!
//! Triangles are written as words `(base, first edge, second edge)` over
//! the magma. A weight-2 syntax tree is a pair of triangles composed at
//! slot 1 or slot 2, so the arity-3 component of the free operad has
//! dimension `2 m^6`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};

use crate::clique::Clique;
use crate::linalg::{sparse_dot_weighted, sparse_from_entries, RowReducer, SparseVec};
use crate::magma::{Element, UnitaryMagma};
use crate::noncrossing::{nc_dim, nc_dual_hilbert, nc_hilbert};
use crate::operad::{Failure, Report};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PresentationError {
    NotFinite(String),
}

impl fmt::Display for PresentationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationError::NotFinite(m) => {
                write!(f, "presentation computations need a finite magma, got {m}")
            }
        }
    }
}

impl std::error::Error for PresentationError {}

/// Shape of a weight-2 syntax tree: the inner triangle sits in slot 1 or
/// slot 2 of the outer one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Shape {
    Left,
    Right,
}

/// A basis element of the weight-2, arity-3 component of the free operad
/// on triangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxTree2 {
    pub shape: Shape,
    pub top: [Element; 3],
    pub bottom: [Element; 3],
}

impl SyntaxTree2 {
    /// Canonical coordinate in the `2 m^6`-dimensional ambient space.
    pub fn index(&self, m: usize) -> usize {
        let shape_offset = match self.shape {
            Shape::Left => 0,
            Shape::Right => m.pow(6),
        };
        shape_offset + word_index(&self.top, m) * m.pow(3) + word_index(&self.bottom, m)
    }

    /// Evaluates the tree in the clique operad.
    pub fn eval(&self, magma: &Arc<UnitaryMagma>) -> Clique {
        let top = triangle(magma, &self.top);
        let bottom = triangle(magma, &self.bottom);
        let slot = match self.shape {
            Shape::Left => 1,
            Shape::Right => 2,
        };
        top.compose(slot, &bottom).expect("valid composition")
    }
}

fn word_index(word: &[Element; 3], m: usize) -> usize {
    word.iter().fold(0, |acc, e| match e {
        Element::Table(i) => acc * m + *i as usize,
        _ => unreachable!("presentation words are table elements"),
    })
}

/// The triangle with the given base, first-edge, and second-edge labels.
pub fn triangle(magma: &Arc<UnitaryMagma>, word: &[Element; 3]) -> Clique {
    Clique::new(
        magma,
        2,
        vec![
            ((1, 3), word[0].clone()),
            ((1, 2), word[1].clone()),
            ((2, 3), word[2].clone()),
        ],
    )
    .expect("triangle labels are magma elements")
}

/// All weight-2 basis elements in canonical index order.
pub fn syntax_tree_basis(magma: &Arc<UnitaryMagma>) -> Result<Vec<SyntaxTree2>, PresentationError> {
    let elements = magma
        .elements()
        .ok_or_else(|| PresentationError::NotFinite(magma.name().into()))?;
    let words: Vec<[Element; 3]> = words3(&elements);
    let mut out = Vec::with_capacity(2 * words.len() * words.len());
    for shape in [Shape::Left, Shape::Right] {
        for top in &words {
            for bottom in &words {
                out.push(SyntaxTree2 {
                    shape,
                    top: top.clone(),
                    bottom: bottom.clone(),
                });
            }
        }
    }
    Ok(out)
}

fn words3(elements: &[Element]) -> Vec<[Element; 3]> {
    let mut out = Vec::with_capacity(elements.len().pow(3));
    for a in elements {
        for b in elements {
            for c in elements {
                out.push([a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    out
}

/// A spanning set of relation vectors with its canonical echelon form.
#[derive(Debug, Clone)]
pub struct RelationSpace {
    magma: Arc<UnitaryMagma>,
    ambient_dim: usize,
    vectors: Vec<SparseVec>,
    echelon: Vec<SparseVec>,
}

impl RelationSpace {
    fn from_vectors(
        magma: &Arc<UnitaryMagma>,
        ambient_dim: usize,
        vectors: Vec<SparseVec>,
    ) -> RelationSpace {
        let mut reducer = RowReducer::new();
        for v in &vectors {
            reducer.insert(v.clone());
        }
        RelationSpace {
            magma: Arc::clone(magma),
            ambient_dim,
            vectors,
            echelon: reducer.echelon_rows().to_vec(),
        }
    }

    pub fn magma(&self) -> &Arc<UnitaryMagma> {
        &self.magma
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    pub fn echelon_rows(&self) -> &[SparseVec] {
        &self.echelon
    }
}

/// Pairs `(a, b)` grouped by their product, each group in lexicographic
/// element order.
fn pairs_by_product(magma: &Arc<UnitaryMagma>) -> BTreeMap<Element, Vec<(Element, Element)>> {
    let elements = magma.elements().expect("finite magma");
    let mut groups: BTreeMap<Element, Vec<(Element, Element)>> = BTreeMap::new();
    for a in &elements {
        for b in &elements {
            groups
                .entry(magma.op(a, b))
                .or_default()
                .push((a.clone(), b.clone()));
        }
    }
    groups
}

fn unit_vec(index: usize, sign: i64) -> (usize, BigRational) {
    (index, BigRational::from_integer(BigInt::from(sign)))
}

/// Generates the relation space of the noncrossing suboperad: pairs of
/// same-shape trees whose glued labels multiply to the same solid
/// diagonal, and the slot-exchange relation when the glued labels cancel.
pub fn build_r(magma: &Arc<UnitaryMagma>) -> Result<RelationSpace, PresentationError> {
    let m = magma
        .cardinality()
        .ok_or_else(|| PresentationError::NotFinite(magma.name().into()))?;
    let elements = magma.elements().unwrap();
    let unit = magma.unit();
    let groups = pairs_by_product(magma);
    let empty = Vec::new();
    let unit_pairs = groups.get(&unit).unwrap_or(&empty);
    let mut vectors: Vec<SparseVec> = Vec::new();

    let idx = |shape: Shape, top: [Element; 3], bottom: [Element; 3]| {
        SyntaxTree2 { shape, top, bottom }.index(m)
    };

    // Same-shape identifications: the glued labels may be replaced by any
    // pair with the same non-unit product.
    for shape in [Shape::Left, Shape::Right] {
        for (delta, pairs) in &groups {
            if *delta == unit {
                continue;
            }
            for outer1 in &elements {
                for outer2 in &elements {
                    for inner2 in &elements {
                        for inner3 in &elements {
                            for s in 0..pairs.len() {
                                for t in (s + 1)..pairs.len() {
                                    let (ps, qs) = &pairs[s];
                                    let (pt, qt) = &pairs[t];
                                    let (top_s, top_t, bot_s, bot_t) = match shape {
                                        Shape::Left => (
                                            [outer1.clone(), ps.clone(), outer2.clone()],
                                            [outer1.clone(), pt.clone(), outer2.clone()],
                                            [qs.clone(), inner2.clone(), inner3.clone()],
                                            [qt.clone(), inner2.clone(), inner3.clone()],
                                        ),
                                        Shape::Right => (
                                            [outer1.clone(), outer2.clone(), ps.clone()],
                                            [outer1.clone(), outer2.clone(), pt.clone()],
                                            [qs.clone(), inner2.clone(), inner3.clone()],
                                            [qt.clone(), inner2.clone(), inner3.clone()],
                                        ),
                                    };
                                    vectors.push(sparse_from_entries(vec![
                                        unit_vec(idx(shape, top_s, bot_s), 1),
                                        unit_vec(idx(shape, top_t, bot_t), -1),
                                    ]));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // Slot exchange: when both glued products are the unit, the left-comb
    // tree equals the right-comb tree with permuted labels.
    for (p2, q1) in unit_pairs {
        for (r3, r1) in unit_pairs {
            for p1 in &elements {
                for p3 in &elements {
                    for q2 in &elements {
                        for q3 in &elements {
                            vectors.push(sparse_from_entries(vec![
                                unit_vec(
                                    idx(
                                        Shape::Left,
                                        [p1.clone(), p2.clone(), p3.clone()],
                                        [q1.clone(), q2.clone(), q3.clone()],
                                    ),
                                    1,
                                ),
                                unit_vec(
                                    idx(
                                        Shape::Right,
                                        [p1.clone(), q2.clone(), r3.clone()],
                                        [r1.clone(), q3.clone(), p3.clone()],
                                    ),
                                    -1,
                                ),
                            ]));
                        }
                    }
                }
            }
        }
    }

    Ok(RelationSpace::from_vectors(magma, 2 * m.pow(6), vectors))
}

/// Generates the orthogonal relation space presenting the Koszul dual:
/// sums over all label pairs with a fixed non-unit product, and the mixed
/// sum over cancelling pairs.
pub fn build_r_perp(magma: &Arc<UnitaryMagma>) -> Result<RelationSpace, PresentationError> {
    let m = magma
        .cardinality()
        .ok_or_else(|| PresentationError::NotFinite(magma.name().into()))?;
    let elements = magma.elements().unwrap();
    let unit = magma.unit();
    let groups = pairs_by_product(magma);
    let empty = Vec::new();
    let unit_pairs = groups.get(&unit).unwrap_or(&empty);
    let mut vectors: Vec<SparseVec> = Vec::new();

    let idx = |shape: Shape, top: [Element; 3], bottom: [Element; 3]| {
        SyntaxTree2 { shape, top, bottom }.index(m)
    };

    // Same-shape sums over a fixed non-unit product.
    for shape in [Shape::Left, Shape::Right] {
        for (delta, pairs) in &groups {
            if *delta == unit {
                continue;
            }
            for outer1 in &elements {
                for outer2 in &elements {
                    for inner2 in &elements {
                        for inner3 in &elements {
                            let entries: Vec<(usize, BigRational)> = pairs
                                .iter()
                                .map(|(a, b)| {
                                    let top = match shape {
                                        Shape::Left => {
                                            [outer1.clone(), a.clone(), outer2.clone()]
                                        }
                                        Shape::Right => {
                                            [outer1.clone(), outer2.clone(), a.clone()]
                                        }
                                    };
                                    let bottom = [b.clone(), inner2.clone(), inner3.clone()];
                                    unit_vec(idx(shape, top, bottom), 1)
                                })
                                .collect();
                            vectors.push(sparse_from_entries(entries));
                        }
                    }
                }
            }
        }
    }

    // Mixed sum over cancelling pairs; the slot-2 term reuses the bound
    // pair inside the summand.
    for p1 in &elements {
        for p3 in &elements {
            for q2 in &elements {
                for q3 in &elements {
                    let mut entries: Vec<(usize, BigRational)> = Vec::new();
                    for (p2, q1) in unit_pairs {
                        entries.push(unit_vec(
                            idx(
                                Shape::Left,
                                [p1.clone(), p2.clone(), p3.clone()],
                                [q1.clone(), q2.clone(), q3.clone()],
                            ),
                            1,
                        ));
                        entries.push(unit_vec(
                            idx(
                                Shape::Right,
                                [p1.clone(), q2.clone(), p2.clone()],
                                [q1.clone(), q3.clone(), p3.clone()],
                            ),
                            -1,
                        ));
                    }
                    vectors.push(sparse_from_entries(entries));
                }
            }
        }
    }

    Ok(RelationSpace::from_vectors(magma, 2 * m.pow(6), vectors))
}

/// The signed quadratic-duality pairing: +1 on matching slot-1 pairs, -1
/// on matching slot-2 pairs, 0 across shapes.
pub fn duality_pairing(m: usize, a: &SparseVec, b: &SparseVec) -> BigRational {
    let cutoff = m.pow(6);
    sparse_dot_weighted(a, b, |col| {
        if col < cutoff {
            BigRational::one()
        } else {
            -BigRational::one()
        }
    })
}

/// Checks orthogonality of the two relation spaces under the signed
/// pairing, the rank-sum identity, and the dimension identities against
/// both Hilbert series.
pub fn verify_koszul_duality(magma: &Arc<UnitaryMagma>) -> Result<Report, PresentationError> {
    let m = magma
        .cardinality()
        .ok_or_else(|| PresentationError::NotFinite(magma.name().into()))?;
    let mut report = Report::new("koszul-duality");
    report.note(format!("magma {} of cardinality {m}", magma.name()));
    report.note(
        "pairing convention: +1 on slot-1 x slot-1, -1 on slot-2 x slot-2, 0 across shapes",
    );
    let r = build_r(magma)?;
    let r_perp = build_r_perp(magma)?;
    let ambient = 2 * m.pow(6);

    for (i, a) in r.vectors().iter().enumerate() {
        for (j, b) in r_perp.vectors().iter().enumerate() {
            let value = duality_pairing(m, a, b);
            report.record(value.is_zero(), || Failure {
                inputs: format!("pairing of relation {i} with dual relation {j}"),
                expected: "0".into(),
                got: value.to_string(),
            });
        }
    }

    report.record(r.rank() + r_perp.rank() == ambient, || Failure {
        inputs: format!("rank sum over {}", magma.name()),
        expected: format!("{ambient}"),
        got: format!("{} + {}", r.rank(), r_perp.rank()),
    });

    let dim_nc3 = nc_hilbert(m as u64, 3).coefficient(3);
    let dim_dual3 = nc_dual_hilbert(m as u64, 3).coefficient(3);
    report.record(
        BigRational::from_integer(BigInt::from(ambient - r.rank())) == dim_nc3,
        || Failure {
            inputs: "ambient minus rank of relations".into(),
            expected: dim_nc3.to_string(),
            got: format!("{}", ambient - r.rank()),
        },
    );
    report.record(
        BigRational::from_integer(BigInt::from(ambient - r_perp.rank())) == dim_dual3,
        || Failure {
            inputs: "ambient minus rank of dual relations".into(),
            expected: dim_dual3.to_string(),
            got: format!("{}", ambient - r_perp.rank()),
        },
    );
    report.note(format!(
        "rank R = {}, rank R-perp = {}, ambient = {ambient}",
        r.rank(),
        r_perp.rank()
    ));
    report.finish();
    Ok(report)
}

/// Rewrite orientation for normal-form counting. The forward orientation
/// rewrites the first-displayed monomial of every relation toward the
/// rest: slot-1 patterns with a cancelling glued pair become slot-2
/// patterns, and glued pairs with a non-unit product are rewritten to the
/// lexicographically least pair with that product. Cancelling pairs on
/// the surviving side are canonicalized the same way, the derived rule
/// that completes the system when the magma has nontrivial unit divisors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    LeftToRight,
    RightToLeft,
}

struct AdjacencyCounts {
    /// For each element `x`, the number of first letters `y` an internal
    /// child may carry below a slot-1 edge when the parent's glued label
    /// is `x`.
    left: Vec<u64>,
    /// Same for slot-2 edges.
    right: Vec<u64>,
}

fn adjacency_counts(magma: &Arc<UnitaryMagma>, orientation: Orientation) -> AdjacencyCounts {
    let elements = magma.elements().expect("finite magma");
    let unit = magma.unit();
    let groups = pairs_by_product(magma);
    // Lexicographically least pair for each product.
    let canonical: BTreeMap<(Element, Element), ()> = groups
        .values()
        .map(|pairs| (pairs[0].clone(), ()))
        .collect();
    let allowed = |x: &Element, y: &Element, comb_side: bool| -> bool {
        let product = magma.op(x, y);
        if product == unit {
            // Cancelling patterns rewrite toward one comb side, and on
            // that side the cancelling pair itself is canonicalized.
            comb_side && canonical.contains_key(&(x.clone(), y.clone()))
        } else {
            canonical.contains_key(&(x.clone(), y.clone()))
        }
    };
    let (left_is_comb, right_is_comb) = match orientation {
        Orientation::LeftToRight => (false, true),
        Orientation::RightToLeft => (true, false),
    };
    let left = elements
        .iter()
        .map(|x| {
            elements
                .iter()
                .filter(|y| allowed(x, y, left_is_comb))
                .count() as u64
        })
        .collect();
    let right = elements
        .iter()
        .map(|x| {
            elements
                .iter()
                .filter(|y| allowed(x, y, right_is_comb))
                .count() as u64
        })
        .collect();
    AdjacencyCounts { left, right }
}

/// Counts arity-`n` syntax trees over the triangles containing no redex of
/// the oriented rewrite system induced by the relations.
pub fn count_normal_forms_oriented(
    magma: &Arc<UnitaryMagma>,
    n: u32,
    orientation: Orientation,
) -> Result<BigInt, PresentationError> {
    let m = magma
        .cardinality()
        .ok_or_else(|| PresentationError::NotFinite(magma.name().into()))?;
    if n == 1 {
        return Ok(BigInt::one());
    }
    let counts = adjacency_counts(magma, orientation);
    // A subtree's count does not depend on its root's first letter, so the
    // state reduces to the root's two slot labels; and those only enter
    // through how many internal-child first letters they admit.
    // total[a] = number of (slot-label, subtree) configurations of arity a
    // summed over the two slot labels.
    let left_sum: BigInt = counts.left.iter().map(|c| BigInt::from(*c)).sum();
    let right_sum: BigInt = counts.right.iter().map(|c| BigInt::from(*c)).sum();
    let m_big = BigInt::from(m as u64);

    // totals[a] = sum over (w2, w3) of U[a][(w2, w3)], where U[a] counts
    // the subtrees of arity a with slot labels (w2, w3):
    // U[a] = sum_{b+c=a} L_b(w2) R_c(w3), with L_1 = R_1 = 1 (a leaf child)
    // and L_b(x) = left_count(x) * totals[b] for b >= 2, analogously R.
    // The sums over (w2, w3) factorize; index 1 is never read.
    let mut totals: Vec<BigInt> = vec![BigInt::zero(); (n + 1) as usize];
    for a in 2..=n {
        let mut acc = BigInt::zero();
        for b in 1..a {
            let c = a - b;
            let lb: BigInt = if b == 1 {
                m_big.clone()
            } else {
                left_sum.clone() * &totals[b as usize]
            };
            let rc: BigInt = if c == 1 {
                m_big.clone()
            } else {
                right_sum.clone() * &totals[c as usize]
            };
            acc += lb * rc;
        }
        totals[a as usize] = acc;
    }
    // The root's first letter is free.
    Ok(&m_big * &totals[n as usize])
}

/// Normal-form count in the forward orientation.
pub fn count_normal_forms(magma: &Arc<UnitaryMagma>, n: u32) -> Result<BigInt, PresentationError> {
    count_normal_forms_oriented(magma, n, Orientation::LeftToRight)
}

/// Checks that evaluation kills every relation, that the arity-3 kernel
/// of evaluation matches the relation rank, and that normal-form counts
/// reproduce the dimension formula up to `n_max`.
pub fn verify_presentation(
    magma: &Arc<UnitaryMagma>,
    n_max: u32,
) -> Result<Report, PresentationError> {
    let m = magma
        .cardinality()
        .ok_or_else(|| PresentationError::NotFinite(magma.name().into()))?;
    let mut report = Report::new("presentation");
    report.note(format!("magma {} of cardinality {m}", magma.name()));
    report.note(
        "rewrite orientation: slot-1 cancelling patterns rewrite to slot-2; \
         glued pairs rewrite to the lexicographically least pair with the same product",
    );
    let basis = syntax_tree_basis(magma)?;
    let r = build_r(magma)?;

    // (i) every relation vector evaluates to zero in the clique operad.
    for (k, vector) in r.vectors().iter().enumerate() {
        let mut sums: BTreeMap<Clique, BigRational> = BTreeMap::new();
        for (col, coeff) in vector {
            let clique = basis[*col].eval(magma);
            *sums.entry(clique).or_insert_with(BigRational::zero) += coeff;
        }
        let ok = sums.values().all(|v| v.is_zero());
        report.record(ok, || Failure {
            inputs: format!("evaluation of relation {k}"),
            expected: "0".into(),
            got: format!(
                "{} nonzero terms",
                sums.values().filter(|v| !v.is_zero()).count()
            ),
        });
    }

    // (ii) the kernel of evaluation at arity 3 has the same dimension as
    // the relation space.
    let mut columns: BTreeMap<Clique, usize> = BTreeMap::new();
    let mut eval_reducer = RowReducer::new();
    for tree in &basis {
        let clique = tree.eval(magma);
        let next = columns.len();
        let col = *columns.entry(clique).or_insert(next);
        eval_reducer.insert(vec![(col, BigRational::one())]);
    }
    let kernel_dim = basis.len() - eval_reducer.rank();
    report.record(kernel_dim == r.rank(), || Failure {
        inputs: "arity-3 evaluation kernel".into(),
        expected: format!("rank R = {}", r.rank()),
        got: format!("{kernel_dim}"),
    });
    report.note(format!(
        "evaluation image dimension {} of ambient {}",
        eval_reducer.rank(),
        basis.len()
    ));

    // (iii) normal forms count the dimensions of the noncrossing operad.
    for n in 1..=n_max {
        let forward = count_normal_forms_oriented(magma, n, Orientation::LeftToRight)?;
        let expected = nc_dim(m as u64, n);
        if forward == expected {
            report.record(true, || unreachable!());
        } else {
            let reverse = count_normal_forms_oriented(magma, n, Orientation::RightToLeft)?;
            report.note(format!(
                "forward orientation mismatches at arity {n}; reverse orientation gives {} (expected {})",
                reverse, expected
            ));
            report.record(false, || Failure {
                inputs: format!("normal forms at arity {n}"),
                expected: expected.to_string(),
                got: forward.to_string(),
            });
        }
    }
    report.finish();
    Ok(report)
}
