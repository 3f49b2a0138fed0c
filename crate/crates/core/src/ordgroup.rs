//! Finitely generated subgroups of ℚⁿ, ordered lexicographically.
//!
//! Conventions:
//!
//! * A `GroupElem` is a vector of exact rationals whose length is the ambient
//!   rank; the total order is lexicographic with the first coordinate most
//!   significant.
//! * A `ValueGroup` is either a lattice (the ℤ-span of finitely many
//!   elements) or a p-divisible hull `ℤ[1/p]·B` of a lattice `B`.
//! * Every lattice is stored through a canonical basis: scale generators to
//!   integer vectors, bring them to lower-triangular Hermite echelon form
//!   (each row's last nonzero entry is its pivot, pivot columns strictly
//!   increase, pivots are positive, entries below a pivot are reduced into
//!   `[0, pivot)`), then scale back.  The form is unique per group, so
//!   structural equality of bases is group equality.
//! * Membership in a p-divisible hull multiplies away denominators of `p` up
//!   to a configured exponent bound (default 64); `order_mod` reports
//!   `INFINITE` past that bound.
//!
//! Quotient indices are computed from the integer change-of-basis
//! determinant, so they are exact; `INFINITE` is a value, not an error, while
//! a failed subgroup precondition is an error.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::{BigInt, Sign};
use num::{BigUint, Integer, One, Signed, Zero};
use thiserror::Error;

use crate::arith::{denom_lcm, fmt_rat, is_prime_u64, split_p_part};
use crate::Rat;

/// Default exponent bound for deciding membership in `ℤ[1/p]·B`.
pub const DEFAULT_P_EXP_BOUND: u32 = 64;

/// Guard for coset enumeration; indices past this are refused rather than
/// enumerated.
const MAX_COSET_ENUMERATION: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("ambient rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("not a subgroup of the containing group")]
    NotASubgroup,
    #[error("group index is infinite")]
    InfiniteIndex,
    #[error("p-divisible parts carry distinct primes {0} and {1}")]
    PrimeMismatch(u64, u64),
    #[error("scaling denominator must be nonzero")]
    ZeroDenominator,
    #[error("operation is not defined for p-divisible groups")]
    DivisibleUnsupported,
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
}

/// Element of ℚⁿ with the ambient rank fixed by the coordinate count.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElem {
    coords: Vec<Rat>,
}

impl GroupElem {
    pub fn new(coords: Vec<Rat>) -> Self {
        GroupElem { coords }
    }

    pub fn zero(rank: usize) -> Self {
        GroupElem { coords: vec![Rat::zero(); rank] }
    }

    /// Rank-1 element from a single rational.
    pub fn scalar(q: Rat) -> Self {
        GroupElem { coords: vec![q] }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        GroupElem { coords: coords.iter().map(|&c| Rat::from_integer(BigInt::from(c))).collect() }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// The single coordinate of a rank-1 element.
    pub fn as_rat(&self) -> Option<&Rat> {
        if self.coords.len() == 1 {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn add(&self, other: &GroupElem) -> Result<GroupElem, GroupError> {
        self.check_rank(other)?;
        Ok(GroupElem {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &GroupElem) -> Result<GroupElem, GroupError> {
        self.check_rank(other)?;
        Ok(GroupElem {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> GroupElem {
        GroupElem { coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn scaled(&self, k: &Rat) -> GroupElem {
        GroupElem { coords: self.coords.iter().map(|a| a * k).collect() }
    }

    /// Lexicographic comparison; the first coordinate is most significant.
    pub fn lex_cmp(&self, other: &GroupElem) -> Result<Ordering, GroupError> {
        self.check_rank(other)?;
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return Ok(ord),
            }
        }
        Ok(Ordering::Equal)
    }

    fn check_rank(&self, other: &GroupElem) -> Result<(), GroupError> {
        if self.rank() != other.rank() {
            return Err(GroupError::RankMismatch(self.rank(), other.rank()));
        }
        Ok(())
    }

    /// Column index of the last nonzero coordinate.
    fn pivot_col(&self) -> Option<usize> {
        self.coords.iter().rposition(|c| !c.is_zero())
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            return write!(f, "{}", fmt_rat(&self.coords[0]));
        }
        let parts: Vec<String> = self.coords.iter().map(fmt_rat).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Total-order comparison of two elements of equal ambient rank.
pub fn lex_compare(a: &GroupElem, b: &GroupElem) -> Result<Ordering, GroupError> {
    a.lex_cmp(b)
}

/// Index of a subgroup: a positive integer or infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupIndex {
    Finite(BigUint),
    Infinite,
}

impl GroupIndex {
    pub fn finite(n: u64) -> Self {
        GroupIndex::Finite(BigUint::from(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, GroupIndex::Finite(_))
    }

    pub fn as_u64(&self) -> Option<u64> {
        match self {
            GroupIndex::Finite(n) => u64::try_from(n).ok(),
            GroupIndex::Infinite => None,
        }
    }
}

impl fmt::Display for GroupIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupIndex::Finite(n) => write!(f, "{n}"),
            GroupIndex::Infinite => write!(f, "INFINITE"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PDivisiblePart {
    pub p: u64,
    pub exp_bound: u32,
}

/// Finitely generated subgroup of ℚⁿ, or the p-divisible hull of one.
#[derive(Clone, Debug)]
pub struct ValueGroup {
    ambient_rank: usize,
    basis: Vec<GroupElem>,
    divisible: Option<PDivisiblePart>,
}

impl ValueGroup {
    /// Lattice generated by `gens` (zero vectors dropped; empty input gives
    /// the trivial group).
    pub fn lattice(gens: &[GroupElem], ambient_rank: usize) -> Result<ValueGroup, GroupError> {
        let basis = canonical_basis(gens, ambient_rank)?;
        Ok(ValueGroup { ambient_rank, basis, divisible: None })
    }

    pub fn trivial(ambient_rank: usize) -> ValueGroup {
        ValueGroup { ambient_rank, basis: Vec::new(), divisible: None }
    }

    /// ℤⁿ inside ℚⁿ.
    pub fn standard(ambient_rank: usize) -> ValueGroup {
        let basis = (0..ambient_rank)
            .map(|i| {
                let mut c = vec![Rat::zero(); ambient_rank];
                c[i] = Rat::one();
                GroupElem::new(c)
            })
            .collect();
        ValueGroup { ambient_rank, basis, divisible: None }
    }

    /// Rank-1 group `q·ℤ` in ambient rank 1.
    pub fn scaled_integers(q: Rat) -> ValueGroup {
        ValueGroup::lattice(&[GroupElem::scalar(q)], 1).expect("rank-1 lattice")
    }

    /// `ℤ[1/p]·base`.  A trivial base collapses to the trivial lattice.  The
    /// stored base is scaled by a power of p so that its entries are
    /// p-integral with at least one entry of p-valuation zero; equality of
    /// hulls is decided by mutual inclusion, not by base identity.
    pub fn p_divisible(p: u64, base: &ValueGroup) -> Result<ValueGroup, GroupError> {
        ValueGroup::p_divisible_with_bound(p, base, DEFAULT_P_EXP_BOUND)
    }

    pub fn p_divisible_with_bound(
        p: u64,
        base: &ValueGroup,
        exp_bound: u32,
    ) -> Result<ValueGroup, GroupError> {
        if !is_prime_u64(p) {
            return Err(GroupError::NotPrime(p));
        }
        if base.divisible.is_some() {
            return Err(GroupError::DivisibleUnsupported);
        }
        if base.basis.is_empty() {
            return Ok(ValueGroup::trivial(base.ambient_rank));
        }
        let min_val = base
            .basis
            .iter()
            .flat_map(|g| g.coords.iter())
            .filter(|c| !c.is_zero())
            .map(|c| crate::arith::p_valuation(c, p))
            .min()
            .expect("nonempty basis");
        let scale = pow_rat(p, -min_val);
        let basis = base.basis.iter().map(|g| g.scaled(&scale)).collect();
        Ok(ValueGroup {
            ambient_rank: base.ambient_rank,
            basis,
            divisible: Some(PDivisiblePart { p, exp_bound }),
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Number of ℤ-independent (equivalently ℚ-independent) generators.
    pub fn rational_rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GroupElem] {
        &self.basis
    }

    pub fn divisible_part(&self) -> Option<PDivisiblePart> {
        self.divisible
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    /// Decides `g ∈ self`.
    pub fn contains(&self, g: &GroupElem) -> Result<bool, GroupError> {
        if g.rank() != self.ambient_rank {
            return Err(GroupError::RankMismatch(g.rank(), self.ambient_rank));
        }
        if g.is_zero() {
            return Ok(true);
        }
        let Some(coords) = solve_coords(g, &self.basis) else {
            return Ok(false);
        };
        match self.divisible {
            None => Ok(coords.iter().all(|c| c.is_integer())),
            Some(pd) => Ok(coords.iter().all(|c| {
                let (e, rest) = split_p_part(&c.denom().to_biguint().expect("positive denom"), pd.p);
                rest.is_one() && e <= pd.exp_bound
            })),
        }
    }

    pub fn is_subgroup_of(&self, other: &ValueGroup) -> Result<bool, GroupError> {
        if self.ambient_rank != other.ambient_rank {
            return Err(GroupError::RankMismatch(self.ambient_rank, other.ambient_rank));
        }
        match (self.divisible, other.divisible) {
            (Some(a), Some(b)) if a.p != b.p => Ok(false),
            (Some(_), None) => Ok(false),
            _ => {
                for g in &self.basis {
                    if !other.contains(g)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Smallest representable group containing both arguments.  For two
    /// lattices this is the exact group sum.  When a p-divisible hull is
    /// involved, the result is `ℤ[1/p]·(sum of bases)`: the smallest
    /// p-divisible group containing both, which equals the exact sum whenever
    /// the other summand's coordinates only add p-power denominators over the
    /// base.  Two hulls with distinct primes are rejected.
    pub fn compositum(&self, other: &ValueGroup) -> Result<ValueGroup, GroupError> {
        if self.ambient_rank != other.ambient_rank {
            return Err(GroupError::RankMismatch(self.ambient_rank, other.ambient_rank));
        }
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        let sum = ValueGroup::lattice(&gens, self.ambient_rank)?;
        match (self.divisible, other.divisible) {
            (None, None) => Ok(sum),
            (Some(a), None) | (None, Some(a)) => {
                ValueGroup::p_divisible_with_bound(a.p, &sum, a.exp_bound)
            }
            (Some(a), Some(b)) => {
                if a.p != b.p {
                    return Err(GroupError::PrimeMismatch(a.p, b.p));
                }
                ValueGroup::p_divisible_with_bound(a.p, &sum, a.exp_bound.max(b.exp_bound))
            }
        }
    }

    /// Index `(self : sub)`.  `INFINITE` when the ranks differ (or a lattice
    /// sits inside a nontrivial hull); an error when `sub` is not contained
    /// in `self`.
    pub fn index_over(&self, sub: &ValueGroup) -> Result<GroupIndex, GroupError> {
        if !sub.is_subgroup_of(self)? {
            return Err(GroupError::NotASubgroup);
        }
        match (self.divisible, sub.divisible) {
            (None, None) => {
                if sub.basis.len() < self.basis.len() {
                    return Ok(GroupIndex::Infinite);
                }
                let det = change_of_basis_det(&sub.basis, &self.basis);
                Ok(GroupIndex::Finite(rat_abs_to_biguint(&det, "lattice index")))
            }
            (Some(_), None) => Ok(GroupIndex::Infinite),
            (None, Some(_)) => unreachable!("hull inside lattice already rejected"),
            (Some(pd), Some(_)) => {
                if sub.basis.len() < self.basis.len() {
                    return Ok(GroupIndex::Infinite);
                }
                let det = change_of_basis_det(&sub.basis, &self.basis);
                // Multiplication by p is an automorphism of the quotient, so
                // the index is the prime-to-p part of the determinant.
                let (_, num_free) =
                    split_p_part(&det.numer().abs().to_biguint().expect("abs"), pd.p);
                let (_, den_free) =
                    split_p_part(&det.denom().abs().to_biguint().expect("abs"), pd.p);
                if !den_free.is_one() {
                    return Err(GroupError::Precondition("hull index is not integral"));
                }
                Ok(GroupIndex::Finite(num_free))
            }
        }
    }

    /// Least n ≥ 1 with `n·b ∈ self`, or `INFINITE` (never below n: the
    /// computation is exact, via coordinates in the basis).
    pub fn order_mod(&self, b: &GroupElem) -> Result<GroupIndex, GroupError> {
        if b.rank() != self.ambient_rank {
            return Err(GroupError::RankMismatch(b.rank(), self.ambient_rank));
        }
        if b.is_zero() {
            return Ok(GroupIndex::finite(1));
        }
        let Some(coords) = solve_coords(b, &self.basis) else {
            return Ok(GroupIndex::Infinite);
        };
        match self.divisible {
            None => {
                let n = denom_lcm(coords.iter());
                Ok(GroupIndex::Finite(n.to_biguint().expect("positive lcm")))
            }
            Some(pd) => {
                let mut acc = BigUint::one();
                for c in &coords {
                    let den = c.denom().to_biguint().expect("positive denom");
                    let (e, free) = split_p_part(&den, pd.p);
                    if e > pd.exp_bound {
                        return Ok(GroupIndex::Infinite);
                    }
                    acc = acc.lcm(&free);
                }
                Ok(GroupIndex::Finite(acc))
            }
        }
    }

    /// `(1/e)·self` for a lattice.
    pub fn fractional(&self, e: u64) -> Result<ValueGroup, GroupError> {
        if e == 0 {
            return Err(GroupError::ZeroDenominator);
        }
        if self.divisible.is_some() {
            return Err(GroupError::DivisibleUnsupported);
        }
        let inv = Rat::new(BigInt::one(), BigInt::from(e));
        let gens: Vec<GroupElem> = self.basis.iter().map(|g| g.scaled(&inv)).collect();
        ValueGroup::lattice(&gens, self.ambient_rank)
    }

    /// Maximal subgroup of `self` containing `sub` in which no nonzero coset
    /// order is divisible by p: the preimage of the prime-to-p component of
    /// the finite quotient, computed as `p^a·self + sub` where `p^a` is the
    /// p-part of the index.
    pub fn p_prime_part(&self, sub: &ValueGroup, p: u64) -> Result<ValueGroup, GroupError> {
        if !is_prime_u64(p) {
            return Err(GroupError::NotPrime(p));
        }
        let index = self.index_over(sub)?;
        let GroupIndex::Finite(n) = index else {
            return Err(GroupError::InfiniteIndex);
        };
        if self.divisible.is_some() {
            // Finite quotient of p-divisible hulls has order coprime to p.
            return Ok(self.clone());
        }
        let (a, _) = split_p_part(&n, p);
        if a == 0 {
            return Ok(self.clone());
        }
        let scale = pow_rat(p, a as i64);
        let mut gens: Vec<GroupElem> = self.basis.iter().map(|g| g.scaled(&scale)).collect();
        gens.extend(sub.basis.iter().cloned());
        ValueGroup::lattice(&gens, self.ambient_rank)
    }

    /// True iff `(self : sub)` is a power of p (p⁰ included); an infinite
    /// index is not.
    pub fn is_p_group_quotient(&self, sub: &ValueGroup, p: u64) -> Result<bool, GroupError> {
        if !is_prime_u64(p) {
            return Err(GroupError::NotPrime(p));
        }
        match self.index_over(sub)? {
            GroupIndex::Infinite => Ok(false),
            GroupIndex::Finite(n) => {
                let (_, free) = split_p_part(&n, p);
                Ok(free.is_one())
            }
        }
    }

    /// Representatives of `self / sub` (both lattices, finite index).  The
    /// transversal is the box `∏ [0, dᵢ)` in coordinates of `self`, with
    /// `dᵢ` the diagonal of the echelon form of the change-of-basis matrix.
    pub fn coset_reps(&self, sub: &ValueGroup) -> Result<Vec<GroupElem>, GroupError> {
        if self.divisible.is_some() || sub.divisible.is_some() {
            return Err(GroupError::DivisibleUnsupported);
        }
        if !sub.is_subgroup_of(self)? {
            return Err(GroupError::NotASubgroup);
        }
        if sub.basis.len() < self.basis.len() {
            return Err(GroupError::InfiniteIndex);
        }
        let r = self.basis.len();
        if r == 0 {
            return Ok(vec![GroupElem::zero(self.ambient_rank)]);
        }
        let t = integer_coords_matrix(&sub.basis, &self.basis);
        let (cols, mat) = hnf_rows(t, r);
        debug_assert_eq!(cols, (0..r).collect::<Vec<_>>());
        let diag: Vec<BigInt> = (0..r).map(|i| mat[i][i].clone()).collect();
        let mut total = BigInt::one();
        for d in &diag {
            total *= d;
        }
        if total > BigInt::from(MAX_COSET_ENUMERATION) {
            return Err(GroupError::Precondition("coset enumeration too large"));
        }
        let mut reps = Vec::new();
        let mut counters = vec![BigInt::zero(); r];
        loop {
            let mut elem = GroupElem::zero(self.ambient_rank);
            for i in 0..r {
                let c = Rat::from_integer(counters[i].clone());
                elem = elem.add(&self.basis[i].scaled(&c))?;
            }
            reps.push(elem);
            let mut i = 0;
            loop {
                if i == r {
                    return Ok(reps);
                }
                counters[i] += 1;
                if counters[i] < diag[i] {
                    break;
                }
                counters[i] = BigInt::zero();
                i += 1;
            }
        }
    }
}

impl PartialEq for ValueGroup {
    fn eq(&self, other: &Self) -> bool {
        if self.ambient_rank != other.ambient_rank {
            return false;
        }
        match (self.divisible, other.divisible) {
            (None, None) => self.basis == other.basis,
            (Some(a), Some(b)) => {
                a.p == b.p
                    && self.is_subgroup_of(other).unwrap_or(false)
                    && other.is_subgroup_of(self).unwrap_or(false)
            }
            _ => false,
        }
    }
}

impl Eq for ValueGroup {}

impl fmt::Display for ValueGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(pd) = self.divisible {
            write!(f, "Z[1/{}].", pd.p)?;
        }
        if self.basis.is_empty() {
            return write!(f, "{{0}}");
        }
        if self.ambient_rank == 1 && self.basis.len() == 1 {
            let q = &self.basis[0].coords[0];
            if q.is_one() {
                return write!(f, "Z");
            }
            if q.is_integer() {
                return write!(f, "{}Z", q.numer());
            }
            return write!(f, "({})Z", fmt_rat(q));
        }
        let parts: Vec<String> = self.basis.iter().map(|g| g.to_string()).collect();
        write!(f, "span{{{}}}", parts.join(", "))
    }
}

/// a·b with `a = p`, `b` possibly negative: `p^e` as a rational.
fn pow_rat(p: u64, e: i64) -> Rat {
    let base = BigInt::from(p);
    if e >= 0 {
        Rat::from_integer(base.pow(e as u32))
    } else {
        Rat::new(BigInt::one(), base.pow((-e) as u32))
    }
}

fn rat_abs_to_biguint(q: &Rat, what: &str) -> BigUint {
    assert!(q.is_integer(), "{what} must be integral");
    q.numer().abs().to_biguint().expect("abs is nonnegative")
}

/// Canonical echelon basis of the ℤ-span of `gens` in ℚ^rank.
fn canonical_basis(gens: &[GroupElem], rank: usize) -> Result<Vec<GroupElem>, GroupError> {
    for g in gens {
        if g.rank() != rank {
            return Err(GroupError::RankMismatch(g.rank(), rank));
        }
    }
    let nonzero: Vec<&GroupElem> = gens.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(Vec::new());
    }
    let scale = denom_lcm(nonzero.iter().flat_map(|g| g.coords.iter()));
    let scale_rat = Rat::from_integer(scale.clone());
    let rows: Vec<Vec<BigInt>> = nonzero
        .iter()
        .map(|g| {
            g.coords
                .iter()
                .map(|c| {
                    let n = c * &scale_rat;
                    debug_assert!(n.is_integer());
                    n.numer().clone()
                })
                .collect()
        })
        .collect();
    let (_, mat) = hnf_rows(rows, rank);
    let inv = Rat::new(BigInt::one(), scale);
    Ok(mat
        .into_iter()
        .map(|row| GroupElem::new(row.into_iter().map(|x| Rat::from_integer(x) * &inv).collect()))
        .collect())
}

/// Lower-triangular Hermite echelon form of integer row vectors.  Returns
/// `(pivot_columns, rows)` with pivot columns strictly increasing, pivots
/// positive and entries below a pivot reduced into `[0, pivot)`.
fn hnf_rows(mut rows: Vec<Vec<BigInt>>, n: usize) -> (Vec<usize>, Vec<Vec<BigInt>>) {
    let mut pivots: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for col in (0..n).rev() {
        loop {
            let nz: Vec<usize> = rows
                .iter()
                .enumerate()
                .filter(|(_, r)| !r[col].is_zero())
                .map(|(i, _)| i)
                .collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    let mut row = rows.swap_remove(i);
                    if row[col].sign() == Sign::Minus {
                        for x in &mut row {
                            *x = -x.clone();
                        }
                    }
                    pivots.push((col, row));
                }
                break;
            }
            let k = *nz
                .iter()
                .min_by(|&&a, &&b| rows[a][col].abs().cmp(&rows[b][col].abs()))
                .expect("nonempty");
            let pivot_row = rows[k].clone();
            for &i in &nz {
                if i == k {
                    continue;
                }
                let q = &rows[i][col] / &pivot_row[col];
                if !q.is_zero() {
                    for j in 0..n {
                        let t = &pivot_row[j] * &q;
                        rows[i][j] -= t;
                    }
                }
            }
        }
    }
    pivots.reverse();
    let cols: Vec<usize> = pivots.iter().map(|(c, _)| *c).collect();
    let mut mat: Vec<Vec<BigInt>> = pivots.into_iter().map(|(_, r)| r).collect();
    for i in (0..mat.len()).rev() {
        let ci = cols[i];
        for j in i + 1..mat.len() {
            let q = mat[j][ci].div_floor(&mat[i][ci]);
            if !q.is_zero() {
                for col in 0..n {
                    let t = &mat[i][col] * &q;
                    mat[j][col] -= t;
                }
            }
        }
    }
    (cols, mat)
}

/// Coordinates of `g` in an echelon `basis`, if `g` lies in its ℚ-span.
fn solve_coords(g: &GroupElem, basis: &[GroupElem]) -> Option<Vec<Rat>> {
    let mut rest = g.clone();
    let mut coords = vec![Rat::zero(); basis.len()];
    for i in (0..basis.len()).rev() {
        let ci = basis[i].pivot_col().expect("basis rows are nonzero");
        let q = &rest.coords[ci] / &basis[i].coords[ci];
        if !q.is_zero() {
            rest = rest.sub(&basis[i].scaled(&q)).expect("ranks agree");
        }
        coords[i] = q;
    }
    if rest.is_zero() {
        Some(coords)
    } else {
        None
    }
}

/// Integer matrix expressing `sub` rows in `sup` coordinates; panics if the
/// containment does not hold (callers check first).
fn integer_coords_matrix(sub: &[GroupElem], sup: &[GroupElem]) -> Vec<Vec<BigInt>> {
    sub.iter()
        .map(|d| {
            solve_coords(d, sup)
                .expect("subgroup coordinates exist")
                .into_iter()
                .map(|c| {
                    assert!(c.is_integer(), "subgroup coordinates are integral");
                    c.numer().clone()
                })
                .collect()
        })
        .collect()
}

/// |det| of the rational change-of-basis matrix of `sub` in `sup`
/// coordinates (square by the callers' rank checks).
fn change_of_basis_det(sub: &[GroupElem], sup: &[GroupElem]) -> Rat {
    let r = sup.len();
    if r == 0 {
        return Rat::one();
    }
    let mut m: Vec<Vec<Rat>> = sub
        .iter()
        .map(|d| solve_coords(d, sup).expect("subgroup coordinates exist"))
        .collect();
    assert_eq!(m.len(), r, "square change of basis");
    // Gaussian elimination over ℚ; exact.
    let mut det = Rat::one();
    for col in 0..r {
        let Some(pivot_row) = (col..r).find(|&i| !m[i][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for i in col + 1..r {
            if m[i][col].is_zero() {
                continue;
            }
            let factor = &m[i][col] / &pivot;
            for j in col..r {
                let t = &m[col][j] * &factor;
                m[i][j] -= t;
            }
        }
    }
    if det.is_negative() {
        -det
    } else {
        det
    }
}

/// 𝔽_q-independence of the cosets of `a` and `b` over `sub`: no combination
/// `i·a + j·b` with `0 ≤ i, j < q`, `(i, j) ≠ (0, 0)` lies in `sub`.
/// Requires `q·a ∈ sub` and `q·b ∈ sub`.
pub fn fq_independent(
    a: &GroupElem,
    b: &GroupElem,
    q: u64,
    sub: &ValueGroup,
) -> Result<bool, GroupError> {
    if q < 2 {
        return Err(GroupError::Precondition("q must be at least 2"));
    }
    let qe = Rat::from_integer(BigInt::from(q));
    if !sub.contains(&a.scaled(&qe))? || !sub.contains(&b.scaled(&qe))? {
        return Err(GroupError::Precondition("q·a and q·b must lie in the base group"));
    }
    for i in 0..q {
        for j in 0..q {
            if i == 0 && j == 0 {
                continue;
            }
            let ia = a.scaled(&Rat::from_integer(BigInt::from(i)));
            let jb = b.scaled(&Rat::from_integer(BigInt::from(j)));
            if sub.contains(&ia.add(&jb)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
