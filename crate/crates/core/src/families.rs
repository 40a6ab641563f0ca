//! The quotient and suboperad families of the clique operad: bubbles,
//! white cliques, bounded crossing/nesting/degree, acyclicity, and the
//! mixed families built from sums and intersections of their ideals.
//!
//! Every ideal here is monomial in the fundamental basis, so a family is
//! represented by its membership predicate on basis cliques; projection is
//! term filtering and quotient composition is compose-then-project.

use std::fmt;
use std::sync::Arc;

use crate::clique::{Clique, CliqueStats};
use crate::magma::UnitaryMagma;
use crate::operad::{cliques_up_to, lin_compose, Failure, LinComb, OperadError, Report};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyError {
    UnknownFamily(String),
    MissingParameter(String),
    Inadmissible { family: String, condition: String },
    SuboperadOnly(String),
    InputNotMember { family: String, clique: String },
    ClosureViolation { family: String, clique: String },
    Operad(OperadError),
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::UnknownFamily(n) => write!(f, "unknown family: {n}"),
            FamilyError::MissingParameter(n) => {
                write!(f, "family {n} needs an integer parameter, e.g. {n}:1")
            }
            FamilyError::Inadmissible { family, condition } => {
                write!(f, "family {family} is not admissible: {condition}")
            }
            FamilyError::SuboperadOnly(n) => {
                write!(
                    f,
                    "family {n} is a suboperad, not a quotient; projection undefined"
                )
            }
            FamilyError::InputNotMember { family, clique } => {
                write!(f, "input term {clique} is not a member of {family}")
            }
            FamilyError::ClosureViolation { family, clique } => {
                write!(f, "suboperad {family} not closed: composition produced {clique}")
            }
            FamilyError::Operad(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FamilyError {}

impl From<OperadError> for FamilyError {
    fn from(e: OperadError) -> Self {
        FamilyError::Operad(e)
    }
}

/// How the family sits inside the ambient operad.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Quotient,
    Suboperad,
    QuotientOfSuboperad,
}

/// How `q_compose` treats a family that is both a quotient and a
/// suboperad: projecting quotient composition (the default) or
/// closure-checked suboperad composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompositionMode {
    Quotient,
    Suboperad,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FamilySpec {
    Bub,
    Whi,
    Cro(u32),
    Nes,
    NesK(u32),
    Deg(u32),
    Acy,
    Sch,
    Pat,
    For,
    Mot,
    Dis,
    Luc,
}

impl FamilySpec {
    fn display(&self) -> String {
        match self {
            FamilySpec::Bub => "Bub".into(),
            FamilySpec::Whi => "Whi".into(),
            FamilySpec::Cro(k) => format!("Cro:{k}"),
            FamilySpec::Nes => "Nes".into(),
            FamilySpec::NesK(k) => format!("Nes:{k}"),
            FamilySpec::Deg(k) => format!("Deg:{k}"),
            FamilySpec::Acy => "Acy".into(),
            FamilySpec::Sch => "Sch".into(),
            FamilySpec::Pat => "Pat".into(),
            FamilySpec::For => "For".into(),
            FamilySpec::Mot => "Mot".into(),
            FamilySpec::Dis => "Dis".into(),
            FamilySpec::Luc => "Luc".into(),
        }
    }

    fn kind(&self) -> FamilyKind {
        match self {
            FamilySpec::Whi => FamilyKind::Suboperad,
            FamilySpec::Sch | FamilySpec::Dis => FamilyKind::QuotientOfSuboperad,
            _ => FamilyKind::Quotient,
        }
    }

    /// Families whose ideal property needs a magma without nontrivial unit
    /// divisors, because composition may erase the glued arc.
    fn needs_no_unit_divisors(&self) -> bool {
        matches!(
            self,
            FamilySpec::Nes
                | FamilySpec::NesK(_)
                | FamilySpec::Deg(_)
                | FamilySpec::Acy
                | FamilySpec::Pat
                | FamilySpec::For
                | FamilySpec::Mot
                | FamilySpec::Dis
                | FamilySpec::Luc
        )
    }

    fn member(&self, s: &CliqueStats) -> bool {
        match self {
            FamilySpec::Bub => s.bubble,
            FamilySpec::Whi => s.white,
            FamilySpec::Cro(k) => s.crossing <= *k,
            FamilySpec::Nes => s.nesting_free,
            FamilySpec::NesK(k) => s.max_nesting <= *k,
            FamilySpec::Deg(k) => s.max_degree <= *k,
            FamilySpec::Acy => s.acyclic,
            FamilySpec::Sch => s.white && s.crossing == 0,
            FamilySpec::Pat => s.acyclic && s.max_degree <= 2,
            FamilySpec::For => s.acyclic && s.crossing == 0,
            FamilySpec::Mot => s.crossing == 0 && s.max_degree <= 1,
            FamilySpec::Dis => s.white && s.crossing == 0 && s.max_degree <= 1,
            FamilySpec::Luc => s.bubble && s.max_degree <= 1,
        }
    }

    /// The ambient suboperad a quotient-of-suboperad family lives in. The
    /// bounded-crossing families are handled by their composition mode
    /// instead: as quotients their ambient is the whole operad.
    fn sub_member(&self, s: &CliqueStats) -> bool {
        match self {
            FamilySpec::Whi | FamilySpec::Sch | FamilySpec::Dis => s.white,
            _ => true,
        }
    }
}

/// A family over a fixed magma, with admissibility already checked.
#[derive(Debug, Clone)]
pub struct OperadFamily {
    magma: Arc<UnitaryMagma>,
    spec: FamilySpec,
    requested_name: String,
    mode: CompositionMode,
}

impl OperadFamily {
    /// Resolves a family name (`Bub`, `Whi`, `Cro`, `Nes`, `NesK`, `Deg`,
    /// `Acy`, `NC`, `Inv`, `Sch`, `Pat`, `For`, `Mot`, `Dis`, `Luc`) with
    /// its parameter, and checks admissibility of the magma.
    pub fn new(
        name: &str,
        k: Option<u32>,
        magma: &Arc<UnitaryMagma>,
    ) -> Result<OperadFamily, FamilyError> {
        let need_k = |k: Option<u32>| k.ok_or_else(|| FamilyError::MissingParameter(name.into()));
        let spec = match name {
            "Bub" => FamilySpec::Bub,
            "Whi" => FamilySpec::Whi,
            "Cro" => FamilySpec::Cro(need_k(k)?),
            "NC" => FamilySpec::Cro(0),
            "Nes" => match k {
                None => FamilySpec::Nes,
                Some(k) => FamilySpec::NesK(k),
            },
            "NesK" => FamilySpec::NesK(need_k(k)?),
            "Deg" => FamilySpec::Deg(need_k(k)?),
            "Inv" => FamilySpec::Deg(1),
            "Acy" => FamilySpec::Acy,
            "Sch" => FamilySpec::Sch,
            "Pat" => FamilySpec::Pat,
            "For" => FamilySpec::For,
            "Mot" => FamilySpec::Mot,
            "Dis" => FamilySpec::Dis,
            "Luc" => FamilySpec::Luc,
            _ => return Err(FamilyError::UnknownFamily(name.into())),
        };
        if spec.needs_no_unit_divisors()
            && magma.check_properties().has_nontrivial_unit_divisors
        {
            let condition = match magma.unit_divisor_witness() {
                Some((a, b)) => format!(
                    "magma {} has nontrivial unit divisors ({} * {} = unit)",
                    magma.name(),
                    magma.element_label(&a),
                    magma.element_label(&b)
                ),
                None => format!("magma {} has nontrivial unit divisors", magma.name()),
            };
            return Err(FamilyError::Inadmissible {
                family: spec.display(),
                condition,
            });
        }
        Ok(OperadFamily {
            magma: Arc::clone(magma),
            spec,
            requested_name: match k {
                Some(k) if !matches!(name, "NC" | "Inv") => format!("{name}:{k}"),
                _ => name.to_string(),
            },
            mode: CompositionMode::Quotient,
        })
    }

    /// Parses a CLI family string such as `Cro:2`, `Deg:1`, `NC`, `Sch`.
    pub fn parse(s: &str, magma: &Arc<UnitaryMagma>) -> Result<OperadFamily, FamilyError> {
        match s.split_once(':') {
            Some((name, k)) => {
                let k: u32 = k
                    .parse()
                    .map_err(|_| FamilyError::MissingParameter(name.into()))?;
                OperadFamily::new(name, Some(k), magma)
            }
            None => OperadFamily::new(s, None, magma),
        }
    }

    /// Switches between quotient and suboperad composition for families
    /// that support both.
    pub fn with_mode(mut self, mode: CompositionMode) -> OperadFamily {
        self.mode = mode;
        self
    }

    pub fn name(&self) -> &str {
        &self.requested_name
    }

    pub fn canonical_name(&self) -> String {
        self.spec.display()
    }

    pub fn magma(&self) -> &Arc<UnitaryMagma> {
        &self.magma
    }

    pub fn kind(&self) -> FamilyKind {
        self.spec.kind()
    }

    pub fn mode(&self) -> CompositionMode {
        self.mode
    }

    pub fn member(&self, p: &Clique) -> bool {
        p.arity() == 1 || self.spec.member(&p.stats())
    }

    pub(crate) fn member_stats(&self, s: &CliqueStats) -> bool {
        self.spec.member(s)
    }

    fn sub_member(&self, p: &Clique) -> bool {
        p.arity() == 1 || self.spec.sub_member(&p.stats())
    }

    /// Members of the family at the given arity, in canonical order.
    pub fn basis(&self, arity: u32) -> Vec<Clique> {
        crate::operad::all_cliques(&self.magma, arity)
            .into_iter()
            .filter(|p| self.member(p))
            .collect()
    }
}

/// Quotient projection: drops every term outside the family. Rejected for
/// pure suboperads, whose quotient map does not exist.
pub fn project(f: &LinComb, family: &OperadFamily) -> Result<LinComb, FamilyError> {
    if family.kind() == FamilyKind::Suboperad {
        return Err(FamilyError::SuboperadOnly(family.name().into()));
    }
    let mut out = LinComb::zero(f.magma(), f.arity(), f.basis());
    for (c, k) in f.terms() {
        if family.member(c) {
            out.add_term(c.clone(), k.clone())?;
        }
    }
    Ok(out)
}

/// Composition inside the family. Quotient mode composes in the ambient
/// operad and projects; suboperad mode asserts closure instead. Inputs
/// must be supported on member cliques.
pub fn q_compose(
    f: &LinComb,
    i: u32,
    g: &LinComb,
    family: &OperadFamily,
) -> Result<LinComb, FamilyError> {
    for side in [f, g] {
        for (c, _) in side.terms() {
            if !family.member(c) {
                return Err(FamilyError::InputNotMember {
                    family: family.name().into(),
                    clique: c.to_json_string(),
                });
            }
        }
    }
    let composed = lin_compose(f, i, g)?;
    let suboperad_mode =
        family.kind() == FamilyKind::Suboperad || family.mode == CompositionMode::Suboperad;
    if suboperad_mode {
        for (c, _) in composed.terms() {
            if !family.member(c) {
                return Err(FamilyError::ClosureViolation {
                    family: family.name().into(),
                    clique: c.to_json_string(),
                });
            }
        }
        return Ok(composed);
    }
    // Quotient (and quotient-of-suboperad) mode: the suboperad constraint
    // must still be closed; only the ideal part may project away.
    for (c, _) in composed.terms() {
        if !family.sub_member(c) {
            return Err(FamilyError::ClosureViolation {
                family: family.name().into(),
                clique: c.to_json_string(),
            });
        }
    }
    project(&composed, family)
}

/// Exhaustively checks the monomial-ideal property of the family's
/// complement: composing a non-member with anything on either side stays
/// outside the family.
pub fn verify_ideal(family: &OperadFamily, max_arity: u32) -> Result<Report, FamilyError> {
    if family.kind() == FamilyKind::Suboperad {
        return Err(FamilyError::SuboperadOnly(family.name().into()));
    }
    let mut report = Report::new(&format!("ideal-{}", family.name()));
    report.note(format!(
        "family {} over {}, operand arities up to {max_arity}",
        family.name(),
        family.magma().name()
    ));
    let all = cliques_up_to(family.magma(), max_arity);
    // For quotients of a suboperad the ambient universe is the suboperad.
    let universe: Vec<&Clique> = all.iter().filter(|p| family.sub_member(p)).collect();
    for p in &universe {
        if family.member(p) {
            continue;
        }
        for q in &universe {
            for i in 1..=p.arity() {
                let r = p.compose(i, q).unwrap();
                report.record(!family.member(&r), || Failure {
                    inputs: format!(
                        "non-member {} composed at {i} with {}",
                        p.to_json_string(),
                        q.to_json_string()
                    ),
                    expected: "non-member".into(),
                    got: r.to_json_string(),
                });
            }
            for j in 1..=q.arity() {
                let r = q.compose(j, p).unwrap();
                report.record(!family.member(&r), || Failure {
                    inputs: format!(
                        "{} composed at {j} with non-member {}",
                        q.to_json_string(),
                        p.to_json_string()
                    ),
                    expected: "non-member".into(),
                    got: r.to_json_string(),
                });
            }
        }
    }
    report.finish();
    Ok(report)
}
