//! Unitary magmas: finite table-backed magmas, the additive integers, the
//! built-in instances used throughout the library, structural property
//! checks, and magma morphisms.

use std::fmt;
use std::sync::Arc;

use num::BigInt;

/// Error raised while constructing or querying a magma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MagmaError {
    UnknownName(String),
    InvalidParameter(String),
    NotClosed { a: String, b: String, got: String },
    UnitAxiom { element: String, got: String },
    UnknownElement { magma: String, label: String },
    NotFinite(String),
    BadTable(String),
    MorphismViolation(String),
}

impl fmt::Display for MagmaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MagmaError::UnknownName(n) => write!(f, "unknown magma name: {n}"),
            MagmaError::InvalidParameter(m) => write!(f, "invalid magma parameter: {m}"),
            MagmaError::NotClosed { a, b, got } => {
                write!(f, "magma table not closed: {a} * {b} = {got} is not an element")
            }
            MagmaError::UnitAxiom { element, got } => {
                write!(f, "unit axiom violated: product with {element} gives {got}")
            }
            MagmaError::UnknownElement { magma, label } => {
                write!(f, "element {label} does not belong to magma {magma}")
            }
            MagmaError::NotFinite(m) => write!(f, "operation requires a finite magma, got {m}"),
            MagmaError::BadTable(m) => write!(f, "malformed magma table: {m}"),
            MagmaError::MorphismViolation(m) => write!(f, "magma morphism violation: {m}"),
        }
    }
}

impl std::error::Error for MagmaError {}

/// A magma element. Finite magmas index into their element list; the
/// additive integers carry the value itself.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Table(u32),
    Int(BigInt),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum MagmaKind {
    /// Finite magma: `elements` fixes the canonical order, `table` is the
    /// full operation table in row-major order.
    Table {
        elements: Vec<String>,
        unit: u32,
        table: Vec<u32>,
    },
    /// The additive unitary magma on the integers.
    Integers,
}

/// A set with a binary operation admitting a two-sided unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct UnitaryMagma {
    name: String,
    kind: MagmaKind,
}

/// Structural flags of a magma, computed exhaustively when finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MagmaProperties {
    pub right_cancellable: bool,
    pub has_nontrivial_unit_divisors: bool,
    pub commutative: bool,
    pub associative: bool,
}

impl UnitaryMagma {
    /// Builds a finite magma from an explicit operation table given as rows
    /// of element labels. The unit axiom and closure are checked
    /// exhaustively.
    pub fn make_table(
        name: &str,
        elements: Vec<String>,
        unit: &str,
        rows: Vec<Vec<String>>,
    ) -> Result<Arc<Self>, MagmaError> {
        let m = elements.len();
        if m == 0 {
            return Err(MagmaError::BadTable("empty element list".into()));
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(MagmaError::BadTable(format!("duplicate element {e}")));
            }
        }
        let find = |label: &str| -> Result<u32, MagmaError> {
            elements
                .iter()
                .position(|e| e == label)
                .map(|i| i as u32)
                .ok_or_else(|| MagmaError::UnknownElement {
                    magma: name.to_string(),
                    label: label.to_string(),
                })
        };
        let unit_idx = find(unit)?;
        if rows.len() != m || rows.iter().any(|r| r.len() != m) {
            return Err(MagmaError::BadTable(format!(
                "table must be {m} x {m} over the element list"
            )));
        }
        let mut table = Vec::with_capacity(m * m);
        for (a, row) in rows.iter().enumerate() {
            for (b, label) in row.iter().enumerate() {
                match find(label) {
                    Ok(idx) => table.push(idx),
                    Err(_) => {
                        return Err(MagmaError::NotClosed {
                            a: elements[a].clone(),
                            b: elements[b].clone(),
                            got: label.clone(),
                        })
                    }
                }
            }
        }
        for a in 0..m {
            let left = table[(unit_idx as usize) * m + a];
            let right = table[a * m + unit_idx as usize];
            if left as usize != a || right as usize != a {
                let got = if left as usize != a { left } else { right };
                return Err(MagmaError::UnitAxiom {
                    element: elements[a].clone(),
                    got: elements[got as usize].clone(),
                });
            }
        }
        Ok(Arc::new(UnitaryMagma {
            name: name.to_string(),
            kind: MagmaKind::Table {
                elements,
                unit: unit_idx,
                table,
            },
        }))
    }

    /// The additive unitary magma on the integers, named `Z`.
    pub fn integers() -> Arc<Self> {
        Arc::new(UnitaryMagma {
            name: "Z".into(),
            kind: MagmaKind::Integers,
        })
    }

    /// The cyclic additive magma on Z/lZ, named `N<l>`. Requires `l >= 1`.
    pub fn cyclic(l: u32) -> Result<Arc<Self>, MagmaError> {
        if l == 0 {
            return Err(MagmaError::InvalidParameter(
                "cyclic magma needs modulus >= 1".into(),
            ));
        }
        let elements: Vec<String> = (0..l).map(|i| i.to_string()).collect();
        let rows: Vec<Vec<String>> = (0..l)
            .map(|a| (0..l).map(|b| ((a + b) % l).to_string()).collect())
            .collect();
        Self::make_table(&format!("N{l}"), elements, "0", rows)
    }

    /// The magma on `{e, 0, a1, ..., al}` where `0` is absorbing and
    /// `ai * aj = 0`, named `D<l>`.
    pub fn d_magma(l: u32) -> Arc<Self> {
        let mut elements = vec!["e".to_string(), "0".to_string()];
        for i in 1..=l {
            elements.push(format!("a{i}"));
        }
        let m = elements.len();
        let rows: Vec<Vec<String>> = (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| {
                        if a == 0 {
                            elements[b].clone()
                        } else if b == 0 {
                            elements[a].clone()
                        } else {
                            // 0 absorbs and every ai * aj collapses to 0.
                            "0".to_string()
                        }
                    })
                    .collect()
            })
            .collect();
        Self::make_table(&format!("D{l}"), elements, "e", rows).expect("D(l) table is valid")
    }

    /// The magma on `{e, a, b}` with `a`, `b` idempotent and
    /// `a * b = e = b * a`.
    pub fn bnc() -> Arc<Self> {
        let elements = vec!["e".to_string(), "a".to_string(), "b".to_string()];
        let rows = vec![
            vec!["e".into(), "a".into(), "b".into()],
            vec!["a".into(), "a".into(), "e".into()],
            vec!["b".into(), "e".into(), "b".into()],
        ];
        Self::make_table("BNC", elements, "e", rows).expect("BNC table is valid")
    }

    /// Componentwise product of two finite magmas, elements written `(x|y)`.
    pub fn product(a: &Arc<Self>, b: &Arc<Self>) -> Result<Arc<Self>, MagmaError> {
        let (ea, ua, ta) = a.table_parts().ok_or_else(|| MagmaError::NotFinite(a.name.clone()))?;
        let (eb, ub, tb) = b.table_parts().ok_or_else(|| MagmaError::NotFinite(b.name.clone()))?;
        let ma = ea.len();
        let mb = eb.len();
        let label = |i: usize, j: usize| format!("({}|{})", ea[i], eb[j]);
        let elements: Vec<String> = (0..ma)
            .flat_map(|i| (0..mb).map(move |j| (i, j)))
            .map(|(i, j)| label(i, j))
            .collect();
        let rows: Vec<Vec<String>> = (0..ma * mb)
            .map(|x| {
                let (xi, xj) = (x / mb, x % mb);
                (0..ma * mb)
                    .map(|y| {
                        let (yi, yj) = (y / mb, y % mb);
                        label(
                            ta[xi * ma + yi] as usize,
                            tb[xj * mb + yj] as usize,
                        )
                    })
                    .collect()
            })
            .collect();
        let unit = label(ua as usize, ub as usize);
        Self::make_table(
            &format!("prod({},{})", a.name, b.name),
            elements,
            &unit,
            rows,
        )
    }

    /// The magma `D0 x D0` of pairs, named `DMT`.
    pub fn dmt() -> Arc<Self> {
        let d0 = Self::d_magma(0);
        let prod = Self::product(&d0, &d0).expect("D0 is finite");
        Arc::new(UnitaryMagma {
            name: "DMT".into(),
            kind: prod.kind.clone(),
        })
    }

    /// The sub-magma of `DMT` on `{(e|e), (0|e)}`, named `MT`.
    pub fn mt() -> Arc<Self> {
        let dmt = Self::dmt();
        let keep = ["(e|e)", "(0|e)"];
        let elements: Vec<String> = keep.iter().map(|s| s.to_string()).collect();
        let rows: Vec<Vec<String>> = keep
            .iter()
            .map(|a| {
                keep.iter()
                    .map(|b| {
                        let x = dmt.parse_element(a).unwrap();
                        let y = dmt.parse_element(b).unwrap();
                        dmt.element_label(&dmt.op(&x, &y))
                    })
                    .collect()
            })
            .collect();
        Self::make_table("MT", elements, "(e|e)", rows)
            .expect("MT carrier is closed inside DMT")
    }

    /// Resolves a CLI/JSON magma name: `Z`, `N<l>`, `D<l>`, `BNC`, `MT`,
    /// `DMT`, or `prod(A,B)`.
    pub fn builtin(name: &str) -> Result<Arc<Self>, MagmaError> {
        match name {
            "Z" => return Ok(Self::integers()),
            "BNC" => return Ok(Self::bnc()),
            "MT" => return Ok(Self::mt()),
            "DMT" => return Ok(Self::dmt()),
            _ => {}
        }
        if let Some(rest) = name.strip_prefix('N') {
            if let Ok(l) = rest.parse::<u32>() {
                return Self::cyclic(l);
            }
        }
        if let Some(rest) = name.strip_prefix('D') {
            if let Ok(l) = rest.parse::<u32>() {
                return Ok(Self::d_magma(l));
            }
        }
        if let Some(inner) = name.strip_prefix("prod(").and_then(|s| s.strip_suffix(')')) {
            // Split on the comma at depth zero so factors may be products.
            let mut depth = 0usize;
            for (idx, ch) in inner.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth = depth.saturating_sub(1),
                    ',' if depth == 0 => {
                        let a = Self::builtin(inner[..idx].trim())?;
                        let b = Self::builtin(inner[idx + 1..].trim())?;
                        return Self::product(&a, &b);
                    }
                    _ => {}
                }
            }
        }
        Err(MagmaError::UnknownName(name.to_string()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, MagmaKind::Table { .. })
    }

    /// Number of elements; `None` for the integers.
    pub fn cardinality(&self) -> Option<usize> {
        match &self.kind {
            MagmaKind::Table { elements, .. } => Some(elements.len()),
            MagmaKind::Integers => None,
        }
    }

    fn table_parts(&self) -> Option<(&[String], u32, &[u32])> {
        match &self.kind {
            MagmaKind::Table {
                elements,
                unit,
                table,
            } => Some((elements, *unit, table)),
            MagmaKind::Integers => None,
        }
    }

    pub fn unit(&self) -> Element {
        match &self.kind {
            MagmaKind::Table { unit, .. } => Element::Table(*unit),
            MagmaKind::Integers => Element::Int(BigInt::from(0)),
        }
    }

    pub fn is_unit(&self, e: &Element) -> bool {
        *e == self.unit()
    }

    pub fn contains(&self, e: &Element) -> bool {
        match (&self.kind, e) {
            (MagmaKind::Table { elements, .. }, Element::Table(i)) => {
                (*i as usize) < elements.len()
            }
            (MagmaKind::Integers, Element::Int(_)) => true,
            _ => false,
        }
    }

    /// The magma operation. Panics on elements foreign to this magma;
    /// callers validate inputs at the boundary.
    pub fn op(&self, a: &Element, b: &Element) -> Element {
        match (&self.kind, a, b) {
            (MagmaKind::Table { elements, table, .. }, Element::Table(i), Element::Table(j)) => {
                let m = elements.len();
                assert!((*i as usize) < m && (*j as usize) < m, "foreign element");
                Element::Table(table[(*i as usize) * m + *j as usize])
            }
            (MagmaKind::Integers, Element::Int(x), Element::Int(y)) => Element::Int(x + y),
            _ => panic!("element does not belong to magma {}", self.name),
        }
    }

    /// All elements in canonical order; `None` for the integers.
    pub fn elements(&self) -> Option<Vec<Element>> {
        self.table_parts()
            .map(|(es, _, _)| (0..es.len() as u32).map(Element::Table).collect())
    }

    pub fn non_unit_elements(&self) -> Option<Vec<Element>> {
        let unit = self.unit();
        self.elements()
            .map(|es| es.into_iter().filter(|e| *e != unit).collect())
    }

    pub fn element_label(&self, e: &Element) -> String {
        match (&self.kind, e) {
            (MagmaKind::Table { elements, .. }, Element::Table(i)) => {
                elements[*i as usize].clone()
            }
            (MagmaKind::Integers, Element::Int(x)) => x.to_string(),
            _ => panic!("element does not belong to magma {}", self.name),
        }
    }

    pub fn parse_element(&self, label: &str) -> Result<Element, MagmaError> {
        match &self.kind {
            MagmaKind::Table { elements, .. } => elements
                .iter()
                .position(|e| e == label)
                .map(|i| Element::Table(i as u32))
                .ok_or_else(|| MagmaError::UnknownElement {
                    magma: self.name.clone(),
                    label: label.to_string(),
                }),
            MagmaKind::Integers => label
                .parse::<BigInt>()
                .map(Element::Int)
                .map_err(|_| MagmaError::UnknownElement {
                    magma: self.name.clone(),
                    label: label.to_string(),
                }),
        }
    }

    /// Computes the four structural flags exhaustively for finite magmas.
    /// For the integers the flags are known analytically: addition is
    /// cancellable, commutative, associative, and every `a + (-a) = 0`
    /// is a nontrivial unit-divisor pair.
    pub fn check_properties(&self) -> MagmaProperties {
        match &self.kind {
            MagmaKind::Integers => MagmaProperties {
                right_cancellable: true,
                has_nontrivial_unit_divisors: true,
                commutative: true,
                associative: true,
            },
            MagmaKind::Table {
                elements,
                unit,
                table,
            } => {
                let m = elements.len();
                let at = |a: usize, b: usize| table[a * m + b] as usize;
                let mut right_cancellable = true;
                'rc: for c in 0..m {
                    for a in 0..m {
                        for b in (a + 1)..m {
                            if at(a, c) == at(b, c) {
                                right_cancellable = false;
                                break 'rc;
                            }
                        }
                    }
                }
                let u = *unit as usize;
                let mut has_divisors = false;
                for a in 0..m {
                    for b in 0..m {
                        if (a, b) != (u, u) && at(a, b) == u {
                            has_divisors = true;
                        }
                    }
                }
                let commutative = (0..m).all(|a| (0..m).all(|b| at(a, b) == at(b, a)));
                let associative = (0..m)
                    .all(|a| (0..m).all(|b| (0..m).all(|c| at(at(a, b), c) == at(a, at(b, c)))));
                MagmaProperties {
                    right_cancellable,
                    has_nontrivial_unit_divisors: has_divisors,
                    commutative,
                    associative,
                }
            }
        }
    }

    /// A witness `(a, b, c)` with `a * c = b * c` and `a != b`, if any.
    pub fn right_cancellation_witness(&self) -> Option<(Element, Element, Element)> {
        let (es, _, _) = self.table_parts()?;
        let m = es.len() as u32;
        for c in 0..m {
            for a in 0..m {
                for b in (a + 1)..m {
                    let x = self.op(&Element::Table(a), &Element::Table(c));
                    let y = self.op(&Element::Table(b), &Element::Table(c));
                    if x == y {
                        return Some((Element::Table(a), Element::Table(b), Element::Table(c)));
                    }
                }
            }
        }
        None
    }

    /// A pair `(a, b) != (unit, unit)` with `a * b = unit`, if any.
    pub fn unit_divisor_witness(&self) -> Option<(Element, Element)> {
        let (es, unit, _) = self.table_parts()?;
        let m = es.len() as u32;
        for a in 0..m {
            for b in 0..m {
                if (a, b) != (unit, unit)
                    && self.op(&Element::Table(a), &Element::Table(b)) == Element::Table(unit)
                {
                    return Some((Element::Table(a), Element::Table(b)));
                }
            }
        }
        None
    }
}

/// A map between unitary magmas. Validation is separate from construction
/// so that invalid candidate maps can be built and rejected.
#[derive(Debug, Clone)]
pub struct MagmaMorphism {
    source: Arc<UnitaryMagma>,
    target: Arc<UnitaryMagma>,
    images: Vec<Element>,
}

impl MagmaMorphism {
    /// Builds a morphism candidate from a function on elements. The source
    /// must be finite.
    pub fn from_fn(
        source: &Arc<UnitaryMagma>,
        target: &Arc<UnitaryMagma>,
        f: impl Fn(&Element) -> Element,
    ) -> Result<Self, MagmaError> {
        let elements = source
            .elements()
            .ok_or_else(|| MagmaError::NotFinite(source.name().into()))?;
        let images = elements.iter().map(f).collect();
        Ok(MagmaMorphism {
            source: Arc::clone(source),
            target: Arc::clone(target),
            images,
        })
    }

    pub fn source(&self) -> &Arc<UnitaryMagma> {
        &self.source
    }

    pub fn target(&self) -> &Arc<UnitaryMagma> {
        &self.target
    }

    pub fn apply(&self, e: &Element) -> Result<Element, MagmaError> {
        match e {
            Element::Table(i) if (*i as usize) < self.images.len() => {
                Ok(self.images[*i as usize].clone())
            }
            _ => Err(MagmaError::UnknownElement {
                magma: self.source.name().into(),
                label: format!("{e:?}"),
            }),
        }
    }

    /// Checks unit preservation and multiplicativity exhaustively.
    pub fn validate(&self) -> Result<(), MagmaError> {
        for img in &self.images {
            if !self.target.contains(img) {
                return Err(MagmaError::MorphismViolation(format!(
                    "image {img:?} is not an element of {}",
                    self.target.name()
                )));
            }
        }
        let unit_img = self.apply(&self.source.unit())?;
        if !self.target.is_unit(&unit_img) {
            return Err(MagmaError::MorphismViolation(format!(
                "unit of {} maps to non-unit {}",
                self.source.name(),
                self.target.element_label(&unit_img)
            )));
        }
        let elements = self.source.elements().unwrap();
        for a in &elements {
            for b in &elements {
                let lhs = self.apply(&self.source.op(a, b))?;
                let rhs = self.target.op(&self.apply(a)?, &self.apply(b)?);
                if lhs != rhs {
                    return Err(MagmaError::MorphismViolation(format!(
                        "map({} * {}) = {} but images multiply to {}",
                        self.source.element_label(a),
                        self.source.element_label(b),
                        self.target.element_label(&lhs),
                        self.target.element_label(&rhs),
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// True when distinct source elements have distinct images.
    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.images.iter().all(|img| seen.insert(img.clone()))
    }

    /// True when every target element is an image.
    pub fn is_surjective(&self) -> bool {
        match self.target.cardinality() {
            Some(m) => {
                let seen: std::collections::BTreeSet<_> = self.images.iter().collect();
                seen.len() == m
            }
            None => false,
        }
    }
}
