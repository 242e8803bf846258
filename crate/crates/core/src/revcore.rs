//! Pairs of linear involutions, the reversible map `F = phi1 ∘ phi2`, the two
//! reversor sequences and their fixed-subspace chains.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::subspace::SubspaceBasis;

/// Which reversor sequence an index refers to.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    Unprimed,
    Primed,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Unprimed => write!(f, "phi"),
            Family::Primed => write!(f, "phi'"),
        }
    }
}

/// Reversor label: `phi_k` or `phi_k'`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ReversorRef {
    pub family: Family,
    pub k: usize,
}

impl fmt::Display for ReversorRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Unprimed => write!(f, "phi_{}", self.k),
            Family::Primed => write!(f, "phi_{}'", self.k),
        }
    }
}

/// Two exact involutions on the same space. Construction checks that both
/// matrices square to the identity; transversality (fixed subspaces summing
/// to the whole space) is recorded but not required.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionPair {
    phi1: ExactMatrix,
    phi2: ExactMatrix,
    dim: usize,
    transversal: bool,
}

/// `m^2 = I` exactly.
pub fn is_involution(m: &ExactMatrix) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok((m * m).is_identity())
}

/// `f ∘ s = s ∘ f^{-1}`, checked as `f s f = s` to stay in exact products.
pub fn is_reversible(f: &ExactMatrix, s: &ExactMatrix) -> Result<bool> {
    if !f.is_invertible() {
        return Err(Error::Singular);
    }
    Ok(&(&(f * s) * f) == s)
}

/// `f ∘ s = s ∘ f`.
pub fn is_symmetry(f: &ExactMatrix, s: &ExactMatrix) -> Result<bool> {
    if !f.is_invertible() {
        return Err(Error::Singular);
    }
    Ok(f * s == s * f)
}

/// Kernel of `m - I`.
pub fn fixed_subspace(m: &ExactMatrix) -> SubspaceBasis {
    let id = ExactMatrix::identity(m.rows());
    SubspaceBasis::kernel(&(m - &id))
}

/// Kernel of `m + I` (the eigenvalue -1 eigenspace).
pub fn antipodal_subspace(m: &ExactMatrix) -> SubspaceBasis {
    let id = ExactMatrix::identity(m.rows());
    SubspaceBasis::kernel(&(m + &id))
}

/// The reversible map `F = phi1 · phi2` of a pair.
pub fn compose_f(pair: &InvolutionPair) -> ExactMatrix {
    pair.compose()
}

/// Least `m <= m_max` with `f^m = I`, if any.
pub fn order_of(f: &ExactMatrix, m_max: usize) -> Result<Option<usize>> {
    if !f.is_invertible() {
        return Err(Error::Singular);
    }
    let mut acc = f.clone();
    for m in 1..=m_max {
        if acc.is_identity() {
            return Ok(Some(m));
        }
        acc = &acc * f;
    }
    Ok(None)
}

impl InvolutionPair {
    pub fn new(phi1: ExactMatrix, phi2: ExactMatrix) -> Result<Self> {
        if !is_involution(&phi1)? {
            return Err(Error::NotInvolution { which: "phi1" });
        }
        if !is_involution(&phi2)? {
            return Err(Error::NotInvolution { which: "phi2" });
        }
        if phi1.rows() != phi2.rows() {
            return Err(Error::DimensionMismatch {
                expected: phi1.rows(),
                found: phi2.rows(),
            });
        }
        let dim = phi1.rows();
        let transversal = fixed_subspace(&phi1)
            .sum(&fixed_subspace(&phi2))?
            .is_full();
        Ok(InvolutionPair {
            phi1,
            phi2,
            dim,
            transversal,
        })
    }

    pub fn phi1(&self) -> &ExactMatrix {
        &self.phi1
    }

    pub fn phi2(&self) -> &ExactMatrix {
        &self.phi2
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_transversal(&self) -> bool {
        self.transversal
    }

    /// The reversible map `F = phi1 · phi2`.
    pub fn compose(&self) -> ExactMatrix {
        &self.phi1 * &self.phi2
    }

    /// Simultaneous conjugation `(h phi1 h^{-1}, h phi2 h^{-1})`.
    pub fn conjugate_by(&self, h: &ExactMatrix) -> Result<Self> {
        let hinv = h.inverse()?;
        InvolutionPair::new(&(h * &self.phi1) * &hinv, &(h * &self.phi2) * &hinv)
    }

    /// Block-diagonal suspension by `extra` identity coordinates.
    pub fn suspend(&self, extra: usize) -> Self {
        InvolutionPair {
            phi1: self.phi1.extend_identity(extra),
            phi2: self.phi2.extend_identity(extra),
            dim: self.dim + extra,
            transversal: self.transversal,
        }
    }

    /// The reversor `phi_k = phi2 · F^{k-2}` or `phi_k' = F^{k-1} · phi1`,
    /// by repeated exact multiplication. `k = 1, 2` reproduce `phi1`, `phi2`.
    pub fn reversor(&self, k: usize, family: Family) -> Result<ExactMatrix> {
        if k < 1 {
            return Err(Error::IndexOutOfRange {
                context: "reversor index must be at least 1",
            });
        }
        let f = self.compose();
        match family {
            Family::Unprimed => Ok(&self.phi2 * &f.pow(k as i64 - 2)?),
            Family::Primed => Ok(&f.pow(k as i64 - 1)? * &self.phi1),
        }
    }

    pub fn reversor_ref(&self, r: ReversorRef) -> Result<ExactMatrix> {
        self.reversor(r.k, r.family)
    }

    /// Fixed subspace of the `k`-th reversor of the given family.
    pub fn fix(&self, k: usize, family: Family) -> Result<SubspaceBasis> {
        Ok(fixed_subspace(&self.reversor(k, family)?))
    }
}

/// One verified link `F(source) = target` between fixed subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainLink {
    pub source: ReversorRef,
    pub target: ReversorRef,
    /// Index of the source/target subspace in [`ChainReport::subspaces`].
    pub source_subspace: usize,
    pub target_subspace: usize,
    pub relation: LinkRelation,
    pub holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkRelation {
    /// `F(Fix(phi_{k+2})) = Fix(phi_k)`
    UnprimedDescent,
    /// `F(Fix(phi_k')) = Fix(phi_{k+2}')`
    PrimedAscent,
    /// `F(Fix(phi_1)) = Fix(phi_3')`
    BridgeOdd,
    /// `F(Fix(phi_2)) = Fix(phi_2')`
    BridgeEven,
}

impl fmt::Display for LinkRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LinkRelation::UnprimedDescent => "unprimed-descent",
            LinkRelation::PrimedAscent => "primed-ascent",
            LinkRelation::BridgeOdd => "bridge-odd",
            LinkRelation::BridgeEven => "bridge-even",
        };
        write!(f, "{s}")
    }
}

/// Outcome of verifying the two fixed-subspace chains up to `k_max`.
#[derive(Clone, Debug)]
pub struct ChainReport {
    pub k_max: usize,
    pub links: Vec<ChainLink>,
    /// Distinct subspaces encountered, first-seen order; links index into it.
    pub subspaces: Vec<SubspaceBasis>,
    /// Reversor label -> subspace id, for every reversor used in the run.
    pub assignments: Vec<(ReversorRef, usize)>,
    /// Fixed-subspace coincidences of the kind that close a chain.
    pub coincidences: Vec<(ReversorRef, ReversorRef)>,
    pub distinct_fix_count_even: usize,
    pub distinct_fix_count_odd: usize,
    pub finite_chain: bool,
}

impl ChainReport {
    pub fn all_links_hold(&self) -> bool {
        self.links.iter().all(|l| l.holds)
    }

    pub fn subspace_of(&self, r: ReversorRef) -> Option<&SubspaceBasis> {
        self.assignments
            .iter()
            .find(|(label, _)| *label == r)
            .map(|(_, id)| &self.subspaces[*id])
    }
}

/// Checks every chain equality exactly up to `k_max`:
/// `F(Fix(phi_{k+2})) = Fix(phi_k)`, `F(Fix(phi_k')) = Fix(phi_{k+2}')`, and
/// the two bridge links. Violations are recorded as links with
/// `holds = false`, never dropped.
pub fn verify_chain(pair: &InvolutionPair, k_max: usize) -> Result<ChainReport> {
    if k_max < 3 {
        return Err(Error::IndexOutOfRange {
            context: "chain verification needs k_max >= 3",
        });
    }
    let f = pair.compose();

    let mut subspaces: Vec<SubspaceBasis> = Vec::new();
    let mut assignments: Vec<(ReversorRef, usize)> = Vec::new();
    let mut intern = |space: SubspaceBasis, label: ReversorRef| -> usize {
        let id = match subspaces.iter().position(|s| *s == space) {
            Some(id) => id,
            None => {
                subspaces.push(space);
                subspaces.len() - 1
            }
        };
        assignments.push((label, id));
        id
    };

    // Fixed subspaces of both families up to k_max + 2 (link targets reach
    // two indices past the horizon).
    let top = k_max + 2;
    let mut ids = std::collections::BTreeMap::new();
    for family in [Family::Unprimed, Family::Primed] {
        for k in 1..=top {
            let label = ReversorRef { family, k };
            let space = pair.fix(k, family)?;
            ids.insert(label, intern(space, label));
        }
    }
    let label = |family, k| ReversorRef { family, k };
    let id_of = |l: &ReversorRef| ids[l];

    let mut links = Vec::new();
    let mut push_link = |source: ReversorRef, target: ReversorRef, relation: LinkRelation| {
        let src_space = &subspaces[id_of(&source)];
        let tgt_space = &subspaces[id_of(&target)];
        let holds = src_space.apply(&f).map(|img| img == *tgt_space).unwrap_or(false);
        links.push(ChainLink {
            source,
            target,
            source_subspace: id_of(&source),
            target_subspace: id_of(&target),
            relation,
            holds,
        });
    };

    for k in 1..=k_max {
        push_link(
            label(Family::Unprimed, k + 2),
            label(Family::Unprimed, k),
            LinkRelation::UnprimedDescent,
        );
        push_link(
            label(Family::Primed, k),
            label(Family::Primed, k + 2),
            LinkRelation::PrimedAscent,
        );
    }
    push_link(
        label(Family::Unprimed, 1),
        label(Family::Primed, 3),
        LinkRelation::BridgeOdd,
    );
    push_link(
        label(Family::Unprimed, 2),
        label(Family::Primed, 2),
        LinkRelation::BridgeEven,
    );

    // Chain-closing coincidences: Fix(phi_k) = Fix(phi_{k+2l}),
    // Fix(phi_k) = Fix(phi_{k+2l}'), or Fix(phi_k') = Fix(phi_{k+2l}').
    let mut coincidences = Vec::new();
    for k in 1..=k_max {
        for l in 1..=(k_max.saturating_sub(k)) / 2 {
            let j = k + 2 * l;
            let pairs = [
                (label(Family::Unprimed, k), label(Family::Unprimed, j)),
                (label(Family::Unprimed, k), label(Family::Primed, j)),
                (label(Family::Primed, k), label(Family::Primed, j)),
            ];
            for (a, b) in pairs {
                if id_of(&a) == id_of(&b) {
                    coincidences.push((a, b));
                }
            }
        }
    }
    let finite_chain = !coincidences.is_empty();

    let distinct_count = |parity: usize| {
        let mut seen = Vec::new();
        for family in [Family::Unprimed, Family::Primed] {
            for k in 1..=k_max {
                if k % 2 == parity {
                    let id = id_of(&label(family, k));
                    if !seen.contains(&id) {
                        seen.push(id);
                    }
                }
            }
        }
        seen.len()
    };

    Ok(ChainReport {
        k_max,
        links,
        subspaces,
        assignments,
        coincidences,
        distinct_fix_count_even: distinct_count(0),
        distinct_fix_count_odd: distinct_count(1),
        finite_chain,
    })
}
