//! Decorated cliques: complete graphs on `n + 1` vertices whose arcs carry
//! magma labels, stored sparsely (unit labels are absent). Provides arc
//! classification, the set-level partial composition, rotation, boundary
//! erasure, and the structural statistics behind the quotient families.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::magma::{Element, UnitaryMagma};

/// An arc `(x, y)` with `1 <= x < y <= n + 1`.
pub type ArcPair = (u32, u32);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliqueError {
    ZeroArity,
    ArcOutOfRange { arc: ArcPair, arity: u32 },
    DuplicateArc(ArcPair),
    ForeignLabel { arc: ArcPair, label: String },
    SolidBaseOnUnit,
    MagmaMismatch { left: String, right: String },
    IndexOutOfRange { index: u32, arity: u32 },
    PositionOutOfRange { position: String, arity: u32 },
    Json(String),
}

impl fmt::Display for CliqueError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliqueError::ZeroArity => write!(f, "clique arity must be at least 1"),
            CliqueError::ArcOutOfRange { arc, arity } => write!(
                f,
                "arc ({}, {}) out of range for arity {arity}",
                arc.0, arc.1
            ),
            CliqueError::DuplicateArc(a) => write!(f, "duplicate arc ({}, {})", a.0, a.1),
            CliqueError::ForeignLabel { arc, label } => write!(
                f,
                "label {label} on arc ({}, {}) is not a magma element",
                arc.0, arc.1
            ),
            CliqueError::SolidBaseOnUnit => {
                write!(f, "the arity-1 clique admits no solid base")
            }
            CliqueError::MagmaMismatch { left, right } => {
                write!(f, "magma mismatch: {left} vs {right}")
            }
            CliqueError::IndexOutOfRange { index, arity } => {
                write!(f, "composition index {index} out of range for arity {arity}")
            }
            CliqueError::PositionOutOfRange { position, arity } => {
                write!(f, "boundary position {position} invalid for arity {arity}")
            }
            CliqueError::Json(m) => write!(f, "malformed clique JSON: {m}"),
        }
    }
}

impl std::error::Error for CliqueError {}

/// A boundary position: the base `(1, n + 1)` or the `i`-th edge
/// `(i, i + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Base,
    Edge(u32),
}

/// An `M`-decorated clique. `labels` holds only the solid arcs, sorted
/// lexicographically; an absent arc is labeled by the unit.
#[derive(Debug, Clone)]
pub struct Clique {
    magma: Arc<UnitaryMagma>,
    arity: u32,
    labels: Vec<(ArcPair, Element)>,
}

impl PartialEq for Clique {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity
            && self.labels == other.labels
            && (Arc::ptr_eq(&self.magma, &other.magma) || self.magma == other.magma)
    }
}

impl Eq for Clique {}

impl PartialOrd for Clique {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Clique {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arity
            .cmp(&other.arity)
            .then_with(|| self.labels.cmp(&other.labels))
            .then_with(|| {
                if Arc::ptr_eq(&self.magma, &other.magma) {
                    Ordering::Equal
                } else {
                    // Full structural comparison keeps Ord consistent with
                    // Eq even across same-named magmas.
                    self.magma.cmp(&other.magma)
                }
            })
    }
}

impl Clique {
    /// The operad unit: the arity-1 clique with unlabeled base.
    pub fn unit(magma: &Arc<UnitaryMagma>) -> Clique {
        Clique {
            magma: Arc::clone(magma),
            arity: 1,
            labels: Vec::new(),
        }
    }

    /// Builds a clique in canonical sparse form. Unit labels are dropped,
    /// arcs are range-checked and sorted, duplicates rejected.
    pub fn new(
        magma: &Arc<UnitaryMagma>,
        arity: u32,
        labels: Vec<(ArcPair, Element)>,
    ) -> Result<Clique, CliqueError> {
        if arity == 0 {
            return Err(CliqueError::ZeroArity);
        }
        let top = arity + 1;
        let mut solid: Vec<(ArcPair, Element)> = Vec::with_capacity(labels.len());
        for ((x, y), label) in labels {
            if !(1 <= x && x < y && y <= top) {
                return Err(CliqueError::ArcOutOfRange {
                    arc: (x, y),
                    arity,
                });
            }
            if !magma.contains(&label) {
                return Err(CliqueError::ForeignLabel {
                    arc: (x, y),
                    label: format!("{label:?}"),
                });
            }
            if magma.is_unit(&label) {
                continue;
            }
            solid.push(((x, y), label));
        }
        solid.sort_unstable_by_key(|a| a.0);
        for w in solid.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(CliqueError::DuplicateArc(w[0].0));
            }
        }
        if arity == 1 && !solid.is_empty() {
            return Err(CliqueError::SolidBaseOnUnit);
        }
        Ok(Clique {
            magma: Arc::clone(magma),
            arity,
            labels: solid,
        })
    }

    /// Convenience constructor from string labels.
    pub fn parse(
        magma: &Arc<UnitaryMagma>,
        arity: u32,
        labels: &[(u32, u32, &str)],
    ) -> Result<Clique, CliqueError> {
        let mut typed = Vec::with_capacity(labels.len());
        for (x, y, s) in labels {
            let e = magma
                .parse_element(s)
                .map_err(|_| CliqueError::ForeignLabel {
                    arc: (*x, *y),
                    label: s.to_string(),
                })?;
            typed.push(((*x, *y), e));
        }
        Clique::new(magma, arity, typed)
    }

    fn from_parts_unchecked(
        magma: Arc<UnitaryMagma>,
        arity: u32,
        mut labels: Vec<(ArcPair, Element)>,
    ) -> Clique {
        labels.sort_unstable_by_key(|a| a.0);
        Clique {
            magma,
            arity,
            labels,
        }
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn vertex_count(&self) -> u32 {
        self.arity + 1
    }

    pub fn magma(&self) -> &Arc<UnitaryMagma> {
        &self.magma
    }

    /// Solid arcs in lexicographic order.
    pub fn solid_arcs(&self) -> &[(ArcPair, Element)] {
        &self.labels
    }

    /// The label of an arc; the unit when the arc is not solid.
    pub fn label(&self, x: u32, y: u32) -> Element {
        match self.labels.binary_search_by(|(a, _)| a.cmp(&(x, y))) {
            Ok(idx) => self.labels[idx].1.clone(),
            Err(_) => self.magma.unit(),
        }
    }

    pub fn is_solid(&self, x: u32, y: u32) -> bool {
        self.labels
            .binary_search_by(|(a, _)| a.cmp(&(x, y)))
            .is_ok()
    }

    pub fn is_base(&self, arc: ArcPair) -> bool {
        arc == (1, self.arity + 1)
    }

    pub fn is_edge(&self, arc: ArcPair) -> bool {
        arc.1 == arc.0 + 1 && !self.is_base(arc)
    }

    pub fn is_diagonal(&self, arc: ArcPair) -> bool {
        !self.is_edge(arc) && !self.is_base(arc)
    }

    /// Gluing the base of `q` onto the `i`-th edge of `self`; the common
    /// arc is relabeled by the product of the two boundary labels.
    pub fn compose(&self, i: u32, q: &Clique) -> Result<Clique, CliqueError> {
        if !(1 <= i && i <= self.arity) {
            return Err(CliqueError::IndexOutOfRange {
                index: i,
                arity: self.arity,
            });
        }
        if !(Arc::ptr_eq(&self.magma, &q.magma) || self.magma == q.magma) {
            return Err(CliqueError::MagmaMismatch {
                left: self.magma.name().into(),
                right: q.magma.name().into(),
            });
        }
        let n = self.arity;
        let m = q.arity;
        let shift_p = |v: u32| if v <= i { v } else { v + m - 1 };
        // Both operands are sorted and the shifts are monotone on
        // vertices, so the two transformed lists stay sorted; merge them
        // and slot the glued arc in during the merge.
        let mut left: Vec<(ArcPair, Element)> = Vec::with_capacity(self.labels.len() + 1);
        for ((x, y), l) in &self.labels {
            if (*x, *y) == (i, i + 1) {
                continue; // participates in the glued arc
            }
            left.push(((shift_p(*x), shift_p(*y)), l.clone()));
        }
        let glued = self.magma.op(&self.label(i, i + 1), &q.label(1, m + 1));
        if !self.magma.is_unit(&glued) {
            let arc = (i, i + m);
            let at = left.partition_point(|(a, _)| *a < arc);
            left.insert(at, (arc, glued));
        }
        let mut labels: Vec<(ArcPair, Element)> =
            Vec::with_capacity(left.len() + q.labels.len());
        let mut li = 0;
        for ((x, y), l) in &q.labels {
            if (*x, *y) == (1, m + 1) {
                continue;
            }
            let arc = (x + i - 1, y + i - 1);
            while li < left.len() && left[li].0 < arc {
                labels.push(left[li].clone());
                li += 1;
            }
            labels.push((arc, l.clone()));
        }
        labels.extend_from_slice(&left[li..]);
        debug_assert!(labels.windows(2).all(|w| w[0].0 < w[1].0));
        Ok(Clique {
            magma: Arc::clone(&self.magma),
            arity: n + m - 1,
            labels,
        })
    }

    /// Rotation by one step in the counterclockwise direction: vertex 1
    /// moves to `n + 1` and every other vertex moves down by one.
    pub fn rotate(&self) -> Clique {
        self.rotate_by(|v, top| if v == 1 { top } else { v - 1 })
    }

    /// The inverse rotation, kept for the cyclic-law discovery.
    pub fn rotate_clockwise(&self) -> Clique {
        self.rotate_by(|v, top| if v == top { 1 } else { v + 1 })
    }

    fn rotate_by(&self, sigma: impl Fn(u32, u32) -> u32) -> Clique {
        let top = self.arity + 1;
        let labels = self
            .labels
            .iter()
            .map(|((x, y), l)| {
                let (a, b) = (sigma(*x, top), sigma(*y, top));
                ((a.min(b), a.max(b)), l.clone())
            })
            .collect();
        Clique::from_parts_unchecked(Arc::clone(&self.magma), self.arity, labels)
    }

    /// The label of the base or of the `i`-th edge.
    pub fn boundary_label(&self, position: Boundary) -> Result<Element, CliqueError> {
        let arc = self.boundary_arc(position)?;
        Ok(self.label(arc.0, arc.1))
    }

    /// Replaces the label of the base or of the `i`-th edge by the unit.
    pub fn erase(&self, position: Boundary) -> Result<Clique, CliqueError> {
        let arc = self.boundary_arc(position)?;
        let labels = self
            .labels
            .iter()
            .filter(|(a, _)| *a != arc)
            .cloned()
            .collect();
        Ok(Clique::from_parts_unchecked(
            Arc::clone(&self.magma),
            self.arity,
            labels,
        ))
    }

    fn boundary_arc(&self, position: Boundary) -> Result<ArcPair, CliqueError> {
        match position {
            Boundary::Base => Ok((1, self.arity + 1)),
            Boundary::Edge(i) if self.arity >= 2 && 1 <= i && i <= self.arity => Ok((i, i + 1)),
            Boundary::Edge(i) => Err(CliqueError::PositionOutOfRange {
                position: format!("edge {i}"),
                arity: self.arity,
            }),
        }
    }

    /// All boundary arcs (the `n` edges and the base) that are solid.
    pub fn solid_boundary_arcs(&self) -> Vec<ArcPair> {
        self.labels
            .iter()
            .map(|(a, _)| *a)
            .filter(|a| !self.is_diagonal(*a))
            .collect()
    }

    /// All solid diagonals.
    pub fn solid_diagonals(&self) -> Vec<ArcPair> {
        self.labels
            .iter()
            .map(|(a, _)| *a)
            .filter(|a| self.is_diagonal(*a))
            .collect()
    }

    pub fn stats(&self) -> CliqueStats {
        let solid: Vec<ArcPair> = self.labels.iter().map(|(a, _)| *a).collect();
        stats_of_solid_arcs(self.arity, &solid)
    }

    /// Canonical JSON value; equal cliques serialize identically.
    pub fn to_json(&self) -> CliqueJson {
        CliqueJson {
            magma: self.magma.name().to_string(),
            size: self.arity,
            labels: self
                .labels
                .iter()
                .map(|((x, y), l)| (*x, *y, self.magma.element_label(l)))
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("clique serialization cannot fail")
    }

    pub fn from_json(json: &CliqueJson) -> Result<Clique, CliqueError> {
        let magma = UnitaryMagma::builtin(&json.magma)
            .map_err(|e| CliqueError::Json(e.to_string()))?;
        let labels: Vec<(u32, u32, &str)> = json
            .labels
            .iter()
            .map(|(x, y, s)| (*x, *y, s.as_str()))
            .collect();
        Clique::parse(&magma, json.size, &labels)
    }

    pub fn from_json_str(s: &str) -> Result<Clique, CliqueError> {
        let json: CliqueJson =
            serde_json::from_str(s).map_err(|e| CliqueError::Json(e.to_string()))?;
        Clique::from_json(&json)
    }
}

impl fmt::Display for Clique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json_string())
    }
}

/// JSON interchange form: `{"magma": ..., "size": n, "labels": [[x, y, l]]}`
/// with unit labels omitted and arcs sorted lexicographically.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CliqueJson {
    pub magma: String,
    pub size: u32,
    pub labels: Vec<(u32, u32, String)>,
}

/// Structural statistics of a clique, all computed on its solid arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliqueStats {
    /// Maximum, over solid diagonals, of the number of solid diagonals
    /// crossing it.
    pub crossing: u32,
    /// Maximum number of solid arcs adjacent to a vertex.
    pub max_degree: u32,
    /// No cycle formed by solid arcs.
    pub acyclic: bool,
    /// No solid arc strictly nested in another.
    pub nesting_free: bool,
    /// No solid edges and no solid base.
    pub white: bool,
    /// No solid diagonals.
    pub bubble: bool,
    /// Maximum, over solid arcs, of the number of other solid arcs nested
    /// in it.
    pub max_nesting: u32,
}

/// Statistics of the clique of the given arity whose solid arcs are
/// exactly `solid`. Labels are irrelevant to every statistic.
pub fn stats_of_solid_arcs(arity: u32, solid: &[ArcPair]) -> CliqueStats {
    let is_diagonal = |a: &ArcPair| a.1 != a.0 + 1 && *a != (1, arity + 1);
    let diagonals: Vec<ArcPair> = solid.iter().copied().filter(|a| is_diagonal(a)).collect();
    let crossing = diagonals
        .iter()
        .map(|d| diagonals.iter().filter(|e| arcs_cross(*d, **e)).count() as u32)
        .max()
        .unwrap_or(0);
    let mut degree = vec![0u32; (arity + 2) as usize];
    for (x, y) in solid {
        degree[*x as usize] += 1;
        degree[*y as usize] += 1;
    }
    let max_degree = degree.iter().copied().max().unwrap_or(0);
    let max_nesting = solid
        .iter()
        .map(|outer| {
            solid
                .iter()
                .filter(|inner| **inner != *outer && arc_nested_in(**inner, *outer))
                .count() as u32
        })
        .max()
        .unwrap_or(0);
    CliqueStats {
        crossing,
        max_degree,
        acyclic: is_acyclic(arity + 1, solid),
        nesting_free: max_nesting == 0,
        white: diagonals.len() == solid.len(),
        bubble: diagonals.is_empty(),
        max_nesting,
    }
}

/// Two arcs cross when their endpoints interleave strictly.
pub fn arcs_cross(a: ArcPair, b: ArcPair) -> bool {
    let ((x, y), (u, v)) = (a, b);
    (x < u && u < y && y < v) || (u < x && x < v && v < y)
}

/// `inner` is nested in `outer` when its span lies inside, endpoints
/// included.
pub fn arc_nested_in(inner: ArcPair, outer: ArcPair) -> bool {
    outer.0 <= inner.0 && inner.1 <= outer.1
}

fn is_acyclic(vertices: u32, arcs: &[ArcPair]) -> bool {
    // Union-find; an arc joining two already-connected vertices closes a cycle.
    let mut parent: Vec<u32> = (0..=vertices).collect();
    fn find(parent: &mut [u32], mut v: u32) -> u32 {
        while parent[v as usize] != v {
            parent[v as usize] = parent[parent[v as usize] as usize];
            v = parent[v as usize];
        }
        v
    }
    for (x, y) in arcs {
        let rx = find(&mut parent, *x);
        let ry = find(&mut parent, *y);
        if rx == ry {
            return false;
        }
        parent[rx as usize] = ry;
    }
    true
}
