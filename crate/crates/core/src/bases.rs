//! The boundary-erasure and diagonal-erasure partial orders on cliques,
//! the H- and K-bases they induce, exact conversions between the three
//! bases, and the closed composition formulas on H and K.
//!
//! `H_p` sums the cliques obtained from `p` by erasing any subset of its
//! solid edges and base; `K_p` sums diagonal erasures with a sign given by
//! the Hamming distance. Both expansions are unitriangular, so conversion
//! back is inclusion-exclusion over the same order ideal.

use std::fmt;

use num::{BigRational, One};

use crate::clique::{ArcPair, Boundary, Clique, CliqueError};
use crate::operad::{BasisTag, LinComb, OperadError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasesError {
    UnitOperand,
    Operad(OperadError),
}

impl fmt::Display for BasesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasesError::UnitOperand => {
                write!(f, "H/K composition formulas exclude the unit clique")
            }
            BasesError::Operad(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for BasesError {}

impl From<OperadError> for BasesError {
    fn from(e: OperadError) -> Self {
        BasesError::Operad(e)
    }
}

impl From<CliqueError> for BasesError {
    fn from(e: CliqueError) -> Self {
        BasesError::Operad(OperadError::Clique(e))
    }
}

/// Which labels an order ideal erases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealMode {
    /// Edges and base (the `be` order).
    BoundaryErase,
    /// Diagonals only (the `d` order).
    DiagonalErase,
}

/// The principal order ideal below `top`: every clique obtained by erasing
/// a subset of its solid boundary arcs (respectively solid diagonals).
#[derive(Debug, Clone)]
pub struct OrderIdeal {
    pub top: Clique,
    pub mode: IdealMode,
    pub members: Vec<Clique>,
}

/// Number of arcs on which the two cliques disagree.
pub fn hamming(a: &Clique, b: &Clique) -> u32 {
    let mut count = 0u32;
    let (mut i, mut j) = (0, 0);
    let xs = a.solid_arcs();
    let ys = b.solid_arcs();
    while i < xs.len() || j < ys.len() {
        match (xs.get(i), ys.get(j)) {
            (Some((ax, al)), Some((bx, bl))) if ax == bx => {
                if al != bl {
                    count += 1;
                }
                i += 1;
                j += 1;
            }
            (Some((ax, _)), Some((bx, _))) if ax < bx => {
                count += 1;
                i += 1;
            }
            (Some(_), Some(_)) => {
                count += 1;
                j += 1;
            }
            (Some(_), None) => {
                count += 1;
                i += 1;
            }
            (None, Some(_)) => {
                count += 1;
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    count
}

fn erasable_arcs(p: &Clique, mode: IdealMode) -> Vec<ArcPair> {
    match mode {
        IdealMode::BoundaryErase => p.solid_boundary_arcs(),
        IdealMode::DiagonalErase => p.solid_diagonals(),
    }
}

fn erase_subset(p: &Clique, arcs: &[ArcPair], mask: u32) -> Clique {
    let erased: Vec<ArcPair> = arcs
        .iter()
        .enumerate()
        .filter(|(k, _)| mask & (1 << k) != 0)
        .map(|(_, a)| *a)
        .collect();
    let labels = p
        .solid_arcs()
        .iter()
        .filter(|(a, _)| !erased.contains(a))
        .cloned()
        .collect();
    Clique::new(p.magma(), p.arity(), labels).expect("erasure preserves validity")
}

/// Enumerates the `2^s` erasures below `top`.
pub fn order_ideal(top: &Clique, mode: IdealMode) -> OrderIdeal {
    let arcs = erasable_arcs(top, mode);
    assert!(arcs.len() < 32, "order ideal too large to enumerate");
    let members = (0..(1u32 << arcs.len()))
        .map(|mask| erase_subset(top, &arcs, mask))
        .collect();
    OrderIdeal {
        top: top.clone(),
        mode,
        members,
    }
}

fn convert(
    f: &LinComb,
    from: BasisTag,
    to: BasisTag,
    mode: IdealMode,
    signed: bool,
) -> Result<LinComb, OperadError> {
    if f.basis() != from {
        return Err(OperadError::BasisMismatch {
            expected: from,
            got: f.basis(),
        });
    }
    let mut out = LinComb::zero(f.magma(), f.arity(), BasisTag::Fundamental);
    for (p, coeff) in f.terms() {
        let arcs = erasable_arcs(p, mode);
        for mask in 0..(1u32 << arcs.len()) {
            let member = erase_subset(p, &arcs, mask);
            let sign = if signed && mask.count_ones() % 2 == 1 {
                -BigRational::one()
            } else {
                BigRational::one()
            };
            out.add_term(member, coeff * sign)?;
        }
    }
    Ok(out.with_basis(to))
}

/// Expands an H-tagged combination into the fundamental basis:
/// `H_p` is the plain sum over the boundary-erasure ideal of `p`.
pub fn from_h(f: &LinComb) -> Result<LinComb, OperadError> {
    convert(
        f,
        BasisTag::H,
        BasisTag::Fundamental,
        IdealMode::BoundaryErase,
        false,
    )
}

/// Writes a fundamental combination over the H-basis; Möbius inversion of
/// the boundary-erasure order gives alternating signs.
pub fn to_h(f: &LinComb) -> Result<LinComb, OperadError> {
    convert(
        f,
        BasisTag::Fundamental,
        BasisTag::H,
        IdealMode::BoundaryErase,
        true,
    )
}

/// Expands a K-tagged combination into the fundamental basis:
/// `K_p` is the sum over the diagonal-erasure ideal signed by Hamming
/// distance.
pub fn from_k(f: &LinComb) -> Result<LinComb, OperadError> {
    convert(
        f,
        BasisTag::K,
        BasisTag::Fundamental,
        IdealMode::DiagonalErase,
        true,
    )
}

/// Writes a fundamental combination over the K-basis (unsigned sum over
/// the diagonal-erasure ideal inverts the signed expansion).
pub fn to_k(f: &LinComb) -> Result<LinComb, OperadError> {
    convert(
        f,
        BasisTag::Fundamental,
        BasisTag::K,
        IdealMode::DiagonalErase,
        false,
    )
}

/// The closed formula for composition on the H-basis: a case split on
/// whether the glued edge of `p` and the base of `q` are solid, with the
/// erased variants supplying the extra terms.
pub fn h_compose(p: &Clique, i: u32, q: &Clique) -> Result<LinComb, BasesError> {
    if p.arity() == 1 || q.arity() == 1 {
        return Err(BasesError::UnitOperand);
    }
    let magma = p.magma();
    let p_i = p.boundary_label(Boundary::Edge(i))?;
    let q_0 = q.boundary_label(Boundary::Base)?;
    let p_solid = !magma.is_unit(&p_i);
    let q_solid = !magma.is_unit(&q_0);
    let d_i_p = p.erase(Boundary::Edge(i))?;
    let d_0_q = q.erase(Boundary::Base)?;
    let mut out = LinComb::zero(magma, p.arity() + q.arity() - 1, BasisTag::H);
    let one = BigRational::one();
    out.add_term(p.compose(i, q)?, one.clone())
        .map_err(BasesError::from)?;
    if p_solid {
        out.add_term(d_i_p.compose(i, q)?, one.clone())
            .map_err(BasesError::from)?;
    }
    if q_solid {
        out.add_term(p.compose(i, &d_0_q)?, one.clone())
            .map_err(BasesError::from)?;
    }
    if p_solid && q_solid {
        out.add_term(d_i_p.compose(i, &d_0_q)?, one)
            .map_err(BasesError::from)?;
    }
    Ok(out)
}

/// The closed formula for composition on the K-basis: one term when the
/// glued labels multiply to the unit, two otherwise.
pub fn k_compose(p: &Clique, i: u32, q: &Clique) -> Result<LinComb, BasesError> {
    if p.arity() == 1 || q.arity() == 1 {
        return Err(BasesError::UnitOperand);
    }
    let magma = p.magma();
    let p_i = p.boundary_label(Boundary::Edge(i))?;
    let q_0 = q.boundary_label(Boundary::Base)?;
    let mut out = LinComb::zero(magma, p.arity() + q.arity() - 1, BasisTag::K);
    let one = BigRational::one();
    out.add_term(p.compose(i, q)?, one.clone())
        .map_err(BasesError::from)?;
    if !magma.is_unit(&magma.op(&p_i, &q_0)) {
        let d_i_p = p.erase(Boundary::Edge(i))?;
        let d_0_q = q.erase(Boundary::Base)?;
        out.add_term(d_i_p.compose(i, &d_0_q)?, one)
            .map_err(BasesError::from)?;
    }
    Ok(out)
}
