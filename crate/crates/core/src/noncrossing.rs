//! The noncrossing suboperad: cliques without crossing solid diagonals,
//! their dual Schröder trees, tree-level composition with edge
//! contraction, the closed dimension formula, and the Hilbert series of
//! the operad and of its Koszul dual extracted from their quadratic
//! functional equations.

use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};

use crate::clique::{Clique, CliqueError};
use crate::magma::{Element, MagmaError, UnitaryMagma};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NcError {
    CrossingConfiguration(String),
    UnaryNode,
    UnitInternalEdge,
    IndexOutOfRange { index: u32, arity: u32 },
    MagmaMismatch { left: String, right: String },
    NotFinite(String),
    Clique(CliqueError),
    Magma(MagmaError),
    Json(String),
}

impl fmt::Display for NcError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NcError::CrossingConfiguration(c) => {
                write!(f, "clique has crossing solid diagonals: {c}")
            }
            NcError::UnaryNode => write!(f, "internal tree nodes need at least two children"),
            NcError::UnitInternalEdge => {
                write!(f, "edges between internal nodes must carry non-unit labels")
            }
            NcError::IndexOutOfRange { index, arity } => {
                write!(f, "leaf index {index} out of range for arity {arity}")
            }
            NcError::MagmaMismatch { left, right } => {
                write!(f, "magma mismatch: {left} vs {right}")
            }
            NcError::NotFinite(m) => write!(f, "operation requires a finite magma, got {m}"),
            NcError::Clique(e) => write!(f, "{e}"),
            NcError::Magma(e) => write!(f, "{e}"),
            NcError::Json(m) => write!(f, "malformed tree JSON: {m}"),
        }
    }
}

impl std::error::Error for NcError {}

impl From<CliqueError> for NcError {
    fn from(e: CliqueError) -> Self {
        NcError::Clique(e)
    }
}

impl From<MagmaError> for NcError {
    fn from(e: MagmaError) -> Self {
        NcError::Magma(e)
    }
}

/// A node of a dual tree. The label is carried by the edge above the
/// node: the root's label is the base label of the encoded configuration,
/// a leaf's label is the corresponding edge label, and an internal node's
/// label is the solid diagonal separating it from its parent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DualNode {
    pub label: Element,
    pub children: Vec<DualNode>,
}

impl DualNode {
    pub fn leaf(label: Element) -> DualNode {
        DualNode {
            label,
            children: Vec::new(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    fn leaf_count(&self) -> u32 {
        if self.is_leaf() {
            1
        } else {
            self.children.iter().map(|c| c.leaf_count()).sum()
        }
    }
}

/// An edge-labeled Schröder tree encoding a noncrossing configuration.
#[derive(Debug, Clone)]
pub struct DualTree {
    magma: Arc<UnitaryMagma>,
    root: DualNode,
}

impl PartialEq for DualTree {
    fn eq(&self, other: &Self) -> bool {
        self.root == other.root
            && (Arc::ptr_eq(&self.magma, &other.magma) || self.magma == other.magma)
    }
}

impl Eq for DualTree {}

impl DualTree {
    pub fn new(magma: &Arc<UnitaryMagma>, root: DualNode) -> Result<DualTree, NcError> {
        validate_node(magma, &root, true)?;
        Ok(DualTree {
            magma: Arc::clone(magma),
            root,
        })
    }

    pub fn magma(&self) -> &Arc<UnitaryMagma> {
        &self.magma
    }

    pub fn root(&self) -> &DualNode {
        &self.root
    }

    /// Number of leaves, which is the arity of the encoded configuration.
    pub fn arity(&self) -> u32 {
        self.root.leaf_count()
    }

    pub fn to_json(&self) -> TreeJson {
        node_to_json(&self.magma, &self.root)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("tree serialization cannot fail")
    }

    pub fn from_json(magma: &Arc<UnitaryMagma>, json: &TreeJson) -> Result<DualTree, NcError> {
        let root = node_from_json(magma, json)?;
        DualTree::new(magma, root)
    }

    pub fn from_json_str(magma: &Arc<UnitaryMagma>, s: &str) -> Result<DualTree, NcError> {
        let json: TreeJson = serde_json::from_str(s).map_err(|e| NcError::Json(e.to_string()))?;
        DualTree::from_json(magma, &json)
    }
}

/// Nested JSON form of a dual tree; leaves omit the `children` field.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TreeJson {
    pub label: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<TreeJson>,
}

fn node_to_json(magma: &Arc<UnitaryMagma>, node: &DualNode) -> TreeJson {
    TreeJson {
        label: magma.element_label(&node.label),
        children: node
            .children
            .iter()
            .map(|c| node_to_json(magma, c))
            .collect(),
    }
}

fn node_from_json(magma: &Arc<UnitaryMagma>, json: &TreeJson) -> Result<DualNode, NcError> {
    Ok(DualNode {
        label: magma.parse_element(&json.label)?,
        children: json
            .children
            .iter()
            .map(|c| node_from_json(magma, c))
            .collect::<Result<_, _>>()?,
    })
}

fn validate_node(magma: &Arc<UnitaryMagma>, node: &DualNode, is_root: bool) -> Result<(), NcError> {
    if node.is_leaf() {
        // A single-leaf tree encodes the operad unit, whose base is unlabeled.
        if is_root && !magma.is_unit(&node.label) {
            return Err(NcError::Clique(CliqueError::SolidBaseOnUnit));
        }
        return Ok(());
    }
    if node.children.len() < 2 {
        return Err(NcError::UnaryNode);
    }
    if !is_root && magma.is_unit(&node.label) {
        return Err(NcError::UnitInternalEdge);
    }
    for c in &node.children {
        validate_node(magma, c, false)?;
    }
    Ok(())
}

/// Computes the dual tree of a noncrossing configuration: faces of the
/// dissection by solid diagonals become internal nodes, boundary edges
/// become leaves, and the base becomes the root edge.
pub fn to_dual_tree(p: &Clique) -> Result<DualTree, NcError> {
    if p.stats().crossing > 0 {
        return Err(NcError::CrossingConfiguration(p.to_json_string()));
    }
    let n = p.arity();
    if n == 1 {
        return DualTree::new(p.magma(), DualNode::leaf(p.magma().unit()));
    }
    let root = build_node(p, 1, n + 1);
    DualTree::new(p.magma(), root)
}

fn build_node(p: &Clique, x: u32, y: u32) -> DualNode {
    if y == x + 1 {
        return DualNode::leaf(p.label(x, y));
    }
    let mut children = Vec::new();
    let mut v = x;
    while v < y {
        // The longest solid diagonal of p starting at v and strictly
        // nested under (x, y) bounds the next face below.
        let mut next: Option<u32> = None;
        for w in (v + 1..=y).rev() {
            if (v, w) == (x, y) || !p.is_diagonal((v, w)) {
                continue;
            }
            if p.is_solid(v, w) {
                next = Some(w);
                break;
            }
        }
        match next {
            Some(w) => {
                children.push(build_node(p, v, w));
                v = w;
            }
            None => {
                children.push(DualNode::leaf(p.label(v, v + 1)));
                v += 1;
            }
        }
    }
    DualNode {
        label: p.label(x, y),
        children,
    }
}

/// Rebuilds the noncrossing configuration from its dual tree.
pub fn from_dual_tree(t: &DualTree) -> Result<Clique, NcError> {
    if t.root.is_leaf() {
        if !t.magma.is_unit(&t.root.label) {
            return Err(NcError::Clique(CliqueError::SolidBaseOnUnit));
        }
        return Ok(Clique::unit(&t.magma));
    }
    let n = t.arity();
    let mut labels: Vec<((u32, u32), Element)> = Vec::new();
    collect_labels(&t.root, 1, &mut labels);
    Ok(Clique::new(&t.magma, n, labels)?)
}

/// Returns the vertex just past the node's span while recording the arc
/// labels of the subtree rooted here. A node spanning leaves `x..y-1`
/// corresponds to the arc `(x, y)`.
fn collect_labels(node: &DualNode, x: u32, labels: &mut Vec<((u32, u32), Element)>) -> u32 {
    if node.is_leaf() {
        labels.push(((x, x + 1), node.label.clone()));
        return x + 1;
    }
    let mut v = x;
    for c in &node.children {
        v = collect_labels(c, v, labels);
    }
    labels.push(((x, v), node.label.clone()));
    v
}

/// Grafts the root of `t` onto the `i`-th leaf of `s`. The labels meeting
/// at the graft multiply; a unit product contracts the connecting edge,
/// splicing the children of `t`'s root in place.
pub fn tree_compose(s: &DualTree, i: u32, t: &DualTree) -> Result<DualTree, NcError> {
    let arity = s.arity();
    if !(1 <= i && i <= arity) {
        return Err(NcError::IndexOutOfRange { index: i, arity });
    }
    if !(Arc::ptr_eq(&s.magma, &t.magma) || s.magma == t.magma) {
        return Err(NcError::MagmaMismatch {
            left: s.magma.name().into(),
            right: t.magma.name().into(),
        });
    }
    let magma = &s.magma;
    if s.root.is_leaf() {
        // Composing the unit: relabel the root edge of t.
        let c = magma.op(&s.root.label, &t.root.label);
        let mut root = t.root.clone();
        root.label = c;
        return DualTree::new(magma, root);
    }
    let mut root = s.root.clone();
    graft(magma, &mut root, i, &t.root);
    DualTree::new(magma, root)
}

/// Replaces the `i`-th leaf (1-based, counted across this subtree) by the
/// grafted tree, contracting when the connecting label is the unit.
fn graft(magma: &Arc<UnitaryMagma>, node: &mut DualNode, mut i: u32, graft_root: &DualNode) {
    let mut slot = 0;
    while slot < node.children.len() {
        let count = node.children[slot].leaf_count();
        if i <= count {
            let child = &mut node.children[slot];
            if child.is_leaf() {
                let c = magma.op(&child.label, &graft_root.label);
                if graft_root.is_leaf() {
                    child.label = c;
                } else if magma.is_unit(&c) {
                    let spliced = graft_root.children.clone();
                    node.children.splice(slot..=slot, spliced);
                } else {
                    *child = DualNode {
                        label: c,
                        children: graft_root.children.clone(),
                    };
                }
            } else {
                graft(magma, child, i, graft_root);
            }
            return;
        }
        i -= count;
        slot += 1;
    }
    unreachable!("leaf index was range-checked")
}

/// All arity-2 cliques over a finite magma: the minimal generating set of
/// the noncrossing suboperad.
pub fn nc_generators(magma: &Arc<UnitaryMagma>) -> Result<Vec<Clique>, NcError> {
    if !magma.is_finite() {
        return Err(NcError::NotFinite(magma.name().into()));
    }
    Ok(crate::operad::all_cliques(magma, 2))
}

/// Exhaustively checks the dual-tree bijection: round trips on every
/// noncrossing clique up to `max_arity + 1`, and agreement of tree-level
/// and clique-level composition on operand arities up to `max_arity`.
pub fn verify_bijection(
    magma: &Arc<UnitaryMagma>,
    max_arity: u32,
) -> Result<crate::operad::Report, NcError> {
    use crate::operad::{Failure, Report};
    if !magma.is_finite() {
        return Err(NcError::NotFinite(magma.name().into()));
    }
    let mut report = Report::new("dual-tree-bijection");
    report.note(format!(
        "round trips up to arity {}, composition naturality up to arity {max_arity}",
        max_arity + 1
    ));
    let noncrossing = |n: u32| -> Vec<Clique> {
        crate::operad::all_cliques(magma, n)
            .into_iter()
            .filter(|p| p.stats().crossing == 0)
            .collect()
    };
    for n in 1..=(max_arity + 1) {
        for p in noncrossing(n) {
            let back = from_dual_tree(&to_dual_tree(&p)?)?;
            report.record(back == p, || Failure {
                inputs: p.to_json_string(),
                expected: p.to_json_string(),
                got: back.to_json_string(),
            });
        }
    }
    let operands: Vec<Clique> = (1..=max_arity).flat_map(noncrossing).collect();
    for p in &operands {
        for q in &operands {
            for i in 1..=p.arity() {
                let direct = p.compose(i, q).unwrap();
                let via_trees =
                    from_dual_tree(&tree_compose(&to_dual_tree(p)?, i, &to_dual_tree(q)?)?)?;
                report.record(via_trees == direct, || Failure {
                    inputs: format!(
                        "{} o_{i} {}",
                        p.to_json_string(),
                        q.to_json_string()
                    ),
                    expected: direct.to_json_string(),
                    got: via_trees.to_json_string(),
                });
            }
        }
    }
    report.finish();
    Ok(report)
}

/// The closed dimension formula for the noncrossing suboperad over a
/// magma of cardinality `m`: a Narayana-weighted sum for `n >= 2` and 1
/// for the unit arity.
pub fn nc_dim(m: u64, n: u32) -> BigInt {
    assert!(m >= 1 && n >= 1);
    if n == 1 {
        return BigInt::one();
    }
    let m = BigInt::from(m);
    let m1 = &m - BigInt::one();
    let mut total = BigRational::zero();
    for k in 0..=(n - 2) {
        let term = BigRational::from_integer(m.pow(n + k + 1))
            * BigRational::from_integer(m1.pow(n - k - 2))
            * BigRational::new(BigInt::one(), BigInt::from(k + 1))
            * BigRational::from_integer(binomial(n - 2, k))
            * BigRational::from_integer(binomial(n - 1, k));
        total += term;
    }
    assert!(total.denom().is_one(), "dimension sum must be an integer");
    total.numer().clone()
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut result = BigInt::one();
    for j in 0..k {
        result = result * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    result
}

/// A truncated power series with zero constant term; `coefficient(n)` is
/// the coefficient of `t^n` for `1 <= n <= order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    pub fn order(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn coefficient(&self, n: u32) -> BigRational {
        assert!(n >= 1 && n <= self.order());
        self.coeffs[(n - 1) as usize].clone()
    }

    /// Coefficients as integers; panics if any denominator is nontrivial.
    pub fn integer_coefficients(&self) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .map(|c| {
                assert!(c.denom().is_one(), "series coefficient is not an integer");
                c.numer().clone()
            })
            .collect()
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| {
            if c.denom().is_one() {
                c.numer().to_string()
            } else {
                c.to_string()
            }
        }).collect();
        write!(f, "{}", parts.join(" "))
    }
}

struct EquationCoeffs {
    quadratic: BigRational,
    t2: BigRational,
}

fn equation_coeffs(m: u64, dual: bool) -> EquationCoeffs {
    let m = BigInt::from(m);
    let cubic = &m * &m * &m - 2 * &m * &m + 2 * &m - BigInt::one();
    let linear = &m - BigInt::one();
    let (t2, quadratic) = if dual {
        (linear, cubic)
    } else {
        (cubic, linear)
    };
    EquationCoeffs {
        quadratic: BigRational::from_integer(quadratic),
        t2: BigRational::from_integer(t2),
    }
}

fn b_coeff(m: u64) -> BigRational {
    let m = BigInt::from(m);
    BigRational::from_integer(2 * &m * &m - 3 * &m + BigInt::from(2))
}

/// Extracts the unique power-series solution with zero constant term of
/// `t + a2 t^2 + (b t - 1) H + c H^2 = 0`, coefficient by coefficient.
fn solve_quadratic_equation(m: u64, terms: u32, dual: bool) -> Series {
    let EquationCoeffs { quadratic, t2 } = equation_coeffs(m, dual);
    let b = b_coeff(m);
    let mut coeffs: Vec<BigRational> = Vec::with_capacity(terms as usize);
    for n in 1..=terms {
        let mut c_n = BigRational::zero();
        if n == 1 {
            c_n += BigRational::one();
        }
        if n == 2 {
            c_n += t2.clone();
        }
        if n >= 2 {
            c_n += &b * &coeffs[(n - 2) as usize];
        }
        // The convolution only involves earlier coefficients since the
        // series has no constant term.
        let mut conv = BigRational::zero();
        for j in 1..n {
            conv += &coeffs[(j - 1) as usize] * &coeffs[(n - j - 1) as usize];
        }
        c_n += &quadratic * conv;
        coeffs.push(c_n);
    }
    Series { coeffs }
}

/// Hilbert series of the noncrossing suboperad over a magma of
/// cardinality `m`, to the given truncation order.
pub fn nc_hilbert(m: u64, terms: u32) -> Series {
    assert!(m >= 1 && terms >= 1);
    solve_quadratic_equation(m, terms, false)
}

/// Hilbert series of the Koszul dual.
pub fn nc_dual_hilbert(m: u64, terms: u32) -> Series {
    assert!(m >= 1 && terms >= 1);
    solve_quadratic_equation(m, terms, true)
}

/// Residual coefficients of the defining functional equation evaluated at
/// the series, up to its truncation order; all must vanish.
pub fn functional_equation_residual(m: u64, series: &Series, dual: bool) -> Vec<BigRational> {
    let EquationCoeffs { quadratic, t2 } = equation_coeffs(m, dual);
    let b = b_coeff(m);
    let order = series.order();
    (1..=order)
        .map(|n| {
            let mut r = BigRational::zero();
            if n == 1 {
                r += BigRational::one();
            }
            if n == 2 {
                r += t2.clone();
            }
            if n >= 2 {
                r += &b * series.coefficient(n - 1);
            }
            r -= series.coefficient(n);
            let mut conv = BigRational::zero();
            for j in 1..n {
                conv += series.coefficient(j) * series.coefficient(n - j);
            }
            r + &quadratic * conv
        })
        .collect()
}

/// Direct count of the combinatorial description of the dual: noncrossing
/// configurations whose `n + 1` boundary arcs carry any of `m` equal
/// pairs and whose solid diagonals carry any of `m^2 - m` unequal pairs.
pub fn count_dual_configurations(m: u64, n: u32) -> BigInt {
    assert!(m >= 1 && n >= 2);
    let boundary = BigInt::from(m).pow(n + 1);
    let diag_weight = BigInt::from(m * m - m);
    let diagonals: Vec<(u32, u32)> = crate::operad::all_arcs(n)
        .into_iter()
        .filter(|&(x, y)| y > x + 1 && (x, y) != (1, n + 1))
        .collect();
    let mut total = BigInt::zero();
    let mut chosen: Vec<(u32, u32)> = Vec::new();
    count_noncrossing_subsets(&diagonals, 0, &mut chosen, &diag_weight, &mut total);
    boundary * total
}

fn count_noncrossing_subsets(
    diagonals: &[(u32, u32)],
    from: usize,
    chosen: &mut Vec<(u32, u32)>,
    weight: &BigInt,
    total: &mut BigInt,
) {
    *total += weight.pow(chosen.len() as u32);
    for idx in from..diagonals.len() {
        let d = diagonals[idx];
        if chosen.iter().all(|c| !crate::clique::arcs_cross(*c, d)) {
            chosen.push(d);
            count_noncrossing_subsets(diagonals, idx + 1, chosen, weight, total);
            chosen.pop();
        }
    }
}
