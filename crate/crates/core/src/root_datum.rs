//! Based root data over a character/cocharacter lattice pair, together with
//! a finite-order lattice automorphism `σ` compatible with the base.
//!
//! The lattice `X_*` is `Z^rank` in fixed coordinates. Simple roots live in
//! the dual lattice `X^*` (also written in coordinates) and pair with
//! cocharacters by the dot product. The Weyl group is generated by the
//! simple reflections `s_i(y) = y − ⟨α_i, y⟩ α_i^∨` and is materialized as an
//! explicit list of integer matrices; construction fails if the closure
//! exceeds a hard element cap instead of trying to prove finiteness up
//! front. `σ` acts on `X_*`, must permute the simple coroots, and its dual
//! must permute the simple roots by the same permutation.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use alloc::collections::BTreeSet;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice_toolkit::{smith_normal_form, BigMatrix};

/// Element of `X^*`, in coordinates.
pub type Character = Vec<i64>;
/// Element of `X_*`, in coordinates.
pub type Cocharacter = Vec<i64>;
/// Element of `X_* ⊗ Q`, in coordinates.
pub type RationalCocharacter = Vec<BigRational>;

/// Hard cap on the Weyl closure, per design: enumeration simply aborts past
/// this size instead of running a finiteness test on the input first.
pub const WEYL_CAP: usize = 10_000_000;

/// Cap on the order of `σ`.
pub const SIGMA_ORDER_CAP: usize = 1000;

/// Square integer matrix acting on `X_*` by left multiplication.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IntMat {
    n: usize,
    a: Vec<i64>,
}

impl IntMat {
    pub fn identity(n: usize) -> Self {
        let mut a = vec![0i64; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        IntMat { n, a }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut a = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            a.extend_from_slice(row);
        }
        IntMat { n, a }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| self.a[i * self.n..(i + 1) * self.n].to_vec()).collect()
    }

    pub fn apply(&self, y: &[i64]) -> Vec<i64> {
        assert_eq!(y.len(), self.n, "vector length mismatch");
        (0..self.n)
            .map(|i| {
                let mut acc: i128 = 0;
                for j in 0..self.n {
                    acc += self.at(i, j) as i128 * y[j] as i128;
                }
                i64::try_from(acc).expect("matrix action overflowed i64")
            })
            .collect()
    }

    pub fn apply_q(&self, y: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(y.len(), self.n, "vector length mismatch");
        (0..self.n)
            .map(|i| {
                let mut acc = BigRational::zero();
                for j in 0..self.n {
                    acc += BigRational::from(BigInt::from(self.at(i, j))) * &y[j];
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        self.checked_mul(other).expect("matrix product overflowed i64")
    }

    /// `None` if any product entry leaves the i64 range.
    pub fn checked_mul(&self, other: &IntMat) -> Option<IntMat> {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut acc = vec![0i128; n * n];
        for i in 0..n {
            for k in 0..n {
                let v = self.at(i, k);
                if v == 0 {
                    continue;
                }
                for j in 0..n {
                    acc[i * n + j] += v as i128 * other.at(k, j) as i128;
                }
            }
        }
        let mut a = Vec::with_capacity(n * n);
        for v in acc {
            a.push(i64::try_from(v).ok()?);
        }
        Some(IntMat { n, a })
    }

    pub fn transpose(&self) -> IntMat {
        let n = self.n;
        let mut a = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                a[j * n + i] = self.at(i, j);
            }
        }
        IntMat { n, a }
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.at(i, j) == i64::from(i == j)))
    }

    pub fn commutes_with(&self, other: &IntMat) -> bool {
        self.mul(other) == other.mul(self)
    }

    fn to_big(&self) -> BigMatrix {
        BigMatrix::from_rows_i64(&self.rows())
    }

    fn from_big(m: &BigMatrix) -> IntMat {
        assert_eq!(m.rows(), m.cols());
        let n = m.rows();
        let mut a = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                a.push(i64::try_from(m.at(i, j)).expect("matrix entry exceeds i64"));
            }
        }
        IntMat { n, a }
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse(&self) -> IntMat {
        IntMat::from_big(&self.to_big().inverse_unimodular())
    }

    /// `|det| == 1`, via the product of Smith invariant factors.
    pub fn is_unimodular(&self) -> bool {
        let snf = smith_normal_form(&self.to_big());
        snf.diag.len() == self.n && snf.diag.iter().all(|d| d.is_one())
    }
}

/// Why a based root datum could not be constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DatumError {
    Shape(String),
    CartanDiagonal { index: usize, value: i64 },
    CartanSign { row: usize, col: usize, value: i64 },
    CartanZeroAsymmetry { row: usize, col: usize },
    DependentSimpleRoots,
    DependentSimpleCoroots,
    WeylTooLarge { cap: usize },
    WeylEntriesOverflow,
    SigmaNotUnimodular,
    SigmaOrderTooLarge { cap: usize },
    SigmaNotCorootPermutation { index: usize },
    SigmaDualRootMismatch { index: usize },
}

impl fmt::Display for DatumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatumError::Shape(msg) => write!(f, "shape error: {msg}"),
            DatumError::CartanDiagonal { index, value } => {
                write!(f, "⟨α_{index}, α_{index}^∨⟩ = {value}, expected 2")
            }
            DatumError::CartanSign { row, col, value } => {
                write!(f, "⟨α_{row}, α_{col}^∨⟩ = {value} must be ≤ 0 off the diagonal")
            }
            DatumError::CartanZeroAsymmetry { row, col } => {
                write!(f, "exactly one of ⟨α_{row}, α_{col}^∨⟩, ⟨α_{col}, α_{row}^∨⟩ is zero")
            }
            DatumError::DependentSimpleRoots => write!(f, "simple roots are linearly dependent"),
            DatumError::DependentSimpleCoroots => {
                write!(f, "simple coroots are linearly dependent")
            }
            DatumError::WeylTooLarge { cap } => {
                write!(f, "Weyl closure exceeded the cap of {cap} elements")
            }
            DatumError::WeylEntriesOverflow => {
                write!(f, "Weyl closure produced entries beyond machine range; the group is not finite")
            }
            DatumError::SigmaNotUnimodular => write!(f, "σ is not invertible over Z"),
            DatumError::SigmaOrderTooLarge { cap } => {
                write!(f, "σ has order exceeding {cap} (or is not of finite order)")
            }
            DatumError::SigmaNotCorootPermutation { index } => {
                write!(f, "σ(α_{index}^∨) is not a simple coroot")
            }
            DatumError::SigmaDualRootMismatch { index } => {
                write!(f, "the dual of σ does not match the coroot permutation on α_{index}")
            }
        }
    }
}

impl core::error::Error for DatumError {}

/// A based root datum `(X^*, Δ, X_*, Δ^∨)` in coordinates, with a compatible
/// finite-order automorphism `σ` of `X_*` and everything derived from it:
/// the Weyl group, the full (co)root system, `2ρ`, and the `σ`-fixed part of
/// the Weyl group.
#[derive(Clone, Debug)]
pub struct BasedRootDatum {
    rank: usize,
    name: Option<String>,
    simple_roots: Vec<Character>,
    simple_coroots: Vec<Cocharacter>,
    sigma: IntMat,
    sigma_inv: IntMat,
    sigma_order: usize,
    coroot_perm: Vec<usize>,
    reflections: Vec<IntMat>,
    weyl: Vec<IntMat>,
    weyl_sigma_fixed: Vec<IntMat>,
    all_roots: Vec<Character>,
    positive_roots: Vec<Character>,
    two_rho: Character,
}

/// A standard Levi: the subgroup generated by a subset of the simple
/// reflections, remembered with its own Weyl group and `2ρ`.
#[derive(Clone, Debug)]
pub struct LeviDatum {
    subset: Vec<usize>,
    weyl: Vec<IntMat>,
    weyl_sigma_fixed: Vec<IntMat>,
    two_rho: Character,
    sigma_stable: bool,
}

impl LeviDatum {
    /// Indices (0-based, sorted) of the simple roots in the Levi.
    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn weyl(&self) -> &[IntMat] {
        &self.weyl
    }

    pub fn weyl_sigma_fixed(&self) -> &[IntMat] {
        &self.weyl_sigma_fixed
    }

    /// Sum of the roots positive for the Levi (supported on `subset`).
    pub fn two_rho(&self) -> &Character {
        &self.two_rho
    }

    /// Whether `σ` permutes the chosen simple roots among themselves.
    pub fn sigma_stable(&self) -> bool {
        self.sigma_stable
    }
}

fn weyl_closure(rank: usize, gens: &[IntMat], cap: usize) -> Result<Vec<IntMat>, DatumError> {
    let mut seen: BTreeSet<IntMat> = BTreeSet::new();
    let id = IntMat::identity(rank);
    seen.insert(id.clone());
    let mut stack = vec![id];
    while let Some(w) = stack.pop() {
        for g in gens {
            let Some(next) = g.checked_mul(&w) else {
                return Err(DatumError::WeylEntriesOverflow);
            };
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(DatumError::WeylTooLarge { cap });
                }
                stack.push(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

fn rank_of_vectors(dim: usize, vectors: &[Vec<i64>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = BigMatrix::from_columns(dim, vectors);
    let snf = smith_normal_form(&m);
    snf.diag.iter().filter(|d| !d.is_zero()).count()
}

impl BasedRootDatum {
    pub fn new(
        rank: usize,
        simple_roots: Vec<Character>,
        simple_coroots: Vec<Cocharacter>,
        sigma_rows: Vec<Vec<i64>>,
        name: Option<String>,
    ) -> Result<Self, DatumError> {
        if rank == 0 {
            return Err(DatumError::Shape("rank must be positive".to_owned()));
        }
        if simple_roots.len() != simple_coroots.len() {
            return Err(DatumError::Shape(
                "simple root and coroot lists differ in length".to_owned(),
            ));
        }
        for (i, r) in simple_roots.iter().enumerate() {
            if r.len() != rank {
                return Err(DatumError::Shape(alloc::format!(
                    "simple root {i} has length {} ≠ rank {rank}",
                    r.len()
                )));
            }
        }
        for (i, c) in simple_coroots.iter().enumerate() {
            if c.len() != rank {
                return Err(DatumError::Shape(alloc::format!(
                    "simple coroot {i} has length {} ≠ rank {rank}",
                    c.len()
                )));
            }
        }
        if sigma_rows.len() != rank || sigma_rows.iter().any(|r| r.len() != rank) {
            return Err(DatumError::Shape(alloc::format!("σ must be a {rank}×{rank} matrix")));
        }

        let m = simple_roots.len();
        let pair = |chi: &[i64], y: &[i64]| -> i64 {
            let acc: i128 =
                chi.iter().zip(y).map(|(&a, &b)| a as i128 * b as i128).sum();
            i64::try_from(acc).expect("pairing overflowed i64")
        };

        // Cartan conditions.
        for i in 0..m {
            let c = pair(&simple_roots[i], &simple_coroots[i]);
            if c != 2 {
                return Err(DatumError::CartanDiagonal { index: i, value: c });
            }
        }
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let cij = pair(&simple_roots[i], &simple_coroots[j]);
                if cij > 0 {
                    return Err(DatumError::CartanSign { row: i, col: j, value: cij });
                }
                let cji = pair(&simple_roots[j], &simple_coroots[i]);
                if (cij == 0) != (cji == 0) {
                    return Err(DatumError::CartanZeroAsymmetry { row: i, col: j });
                }
            }
        }

        if rank_of_vectors(rank, &simple_roots) != m {
            return Err(DatumError::DependentSimpleRoots);
        }
        if rank_of_vectors(rank, &simple_coroots) != m {
            return Err(DatumError::DependentSimpleCoroots);
        }

        // Simple reflections on X_*: s_i = 1 − α_i^∨ ⊗ α_i.
        let reflections: Vec<IntMat> = (0..m)
            .map(|i| {
                let mut rows = vec![vec![0i64; rank]; rank];
                for (k, row) in rows.iter_mut().enumerate() {
                    for (l, entry) in row.iter_mut().enumerate() {
                        *entry = i64::from(k == l)
                            - simple_coroots[i][k] * simple_roots[i][l];
                    }
                }
                IntMat::from_rows(&rows)
            })
            .collect();

        let weyl = weyl_closure(rank, &reflections, WEYL_CAP)?;

        // Full root system: close the simple roots under the dual
        // reflections s_i(χ) = χ − ⟨χ, α_i^∨⟩ α_i. Finiteness follows from
        // the Weyl closure having succeeded.
        let mut roots: BTreeSet<Character> = BTreeSet::new();
        let mut stack: Vec<Character> = Vec::new();
        for r in &simple_roots {
            if roots.insert(r.clone()) {
                stack.push(r.clone());
            }
            let neg: Character = r.iter().map(|v| -v).collect();
            if roots.insert(neg.clone()) {
                stack.push(neg);
            }
        }
        while let Some(chi) = stack.pop() {
            for i in 0..m {
                let k = pair(&chi, &simple_coroots[i]);
                let image: Character = chi
                    .iter()
                    .zip(&simple_roots[i])
                    .map(|(&c, &a)| c - k * a)
                    .collect();
                if roots.insert(image.clone()) {
                    stack.push(image);
                }
            }
        }
        let all_roots: Vec<Character> = roots.into_iter().collect();

        // Positive roots: nonnegative expansion over the simple roots.
        let mut positive_roots: Vec<Character> = Vec::new();
        for root in &all_roots {
            let coeffs = crate::lattice_toolkit::in_sublattice(rank, &simple_roots, root)
                .expect("every root must lie in the lattice spanned by the simple roots");
            let pos = coeffs.iter().all(|c| !c.is_negative());
            let neg = coeffs.iter().all(|c| !c.is_positive());
            assert!(
                pos || neg,
                "root expansion has mixed signs; the input is not a valid based root datum"
            );
            if pos && !root.iter().all(|&v| v == 0) {
                positive_roots.push(root.clone());
            }
        }

        let mut two_rho = vec![0i64; rank];
        for root in &positive_roots {
            for (t, &v) in two_rho.iter_mut().zip(root) {
                *t += v;
            }
        }
        for (j, coroot) in simple_coroots.iter().enumerate() {
            assert_eq!(
                pair(&two_rho, coroot),
                2,
                "⟨2ρ, α_{j}^∨⟩ ≠ 2; derived root system is inconsistent"
            );
        }

        // σ: unimodular, finite order, permutes the simple coroots, and its
        // dual permutes the simple roots by the same permutation.
        let sigma = IntMat::from_rows(&sigma_rows);
        if !sigma.is_unimodular() {
            return Err(DatumError::SigmaNotUnimodular);
        }
        let sigma_inv = sigma.inverse();
        let mut sigma_order = 0usize;
        let mut power = IntMat::identity(rank);
        loop {
            power = sigma.mul(&power);
            sigma_order += 1;
            if power.is_identity() {
                break;
            }
            if sigma_order >= SIGMA_ORDER_CAP {
                return Err(DatumError::SigmaOrderTooLarge { cap: SIGMA_ORDER_CAP });
            }
        }

        let mut coroot_perm = vec![usize::MAX; m];
        for (j, coroot) in simple_coroots.iter().enumerate() {
            let image = sigma.apply(coroot);
            match simple_coroots.iter().position(|c| *c == image) {
                Some(k) => coroot_perm[j] = k,
                None => return Err(DatumError::SigmaNotCorootPermutation { index: j }),
            }
        }
        {
            let mut seen = vec![false; m];
            for &k in &coroot_perm {
                if seen[k] {
                    return Err(DatumError::SigmaNotCorootPermutation { index: k });
                }
                seen[k] = true;
            }
        }
        let sigma_dual = sigma_inv.transpose();
        for (j, root) in simple_roots.iter().enumerate() {
            let image = sigma_dual.apply(root);
            if image != simple_roots[coroot_perm[j]] {
                return Err(DatumError::SigmaDualRootMismatch { index: j });
            }
        }

        let weyl_sigma_fixed: Vec<IntMat> =
            weyl.iter().filter(|w| w.commutes_with(&sigma)).cloned().collect();

        Ok(BasedRootDatum {
            rank,
            name,
            simple_roots,
            simple_coroots,
            sigma,
            sigma_inv,
            sigma_order,
            coroot_perm,
            reflections,
            weyl,
            weyl_sigma_fixed,
            all_roots,
            positive_roots,
            two_rho,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn num_simple(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Character] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Cocharacter] {
        &self.simple_coroots
    }

    pub fn simple_reflection(&self, i: usize) -> &IntMat {
        &self.reflections[i]
    }

    pub fn sigma(&self) -> &IntMat {
        &self.sigma
    }

    pub fn sigma_order(&self) -> usize {
        self.sigma_order
    }

    /// The permutation `π` with `σ(α_j^∨) = α_{π(j)}^∨`.
    pub fn coroot_permutation(&self) -> &[usize] {
        &self.coroot_perm
    }

    /// All Weyl elements, sorted; the identity is present.
    pub fn weyl(&self) -> &[IntMat] {
        &self.weyl
    }

    /// Weyl elements commuting with `σ`.
    pub fn weyl_sigma_fixed(&self) -> &[IntMat] {
        &self.weyl_sigma_fixed
    }

    pub fn all_roots(&self) -> &[Character] {
        &self.all_roots
    }

    pub fn positive_roots(&self) -> &[Character] {
        &self.positive_roots
    }

    /// Sum of the positive roots (an integral character).
    pub fn two_rho(&self) -> &Character {
        &self.two_rho
    }

    pub fn pair(&self, chi: &[i64], y: &[i64]) -> i64 {
        assert_eq!(chi.len(), self.rank);
        assert_eq!(y.len(), self.rank);
        let acc: i128 = chi.iter().zip(y).map(|(&a, &b)| a as i128 * b as i128).sum();
        i64::try_from(acc).expect("pairing overflowed i64")
    }

    pub fn pair_q(&self, chi: &[i64], y: &[BigRational]) -> BigRational {
        assert_eq!(chi.len(), self.rank);
        assert_eq!(y.len(), self.rank);
        let mut acc = BigRational::zero();
        for (&a, b) in chi.iter().zip(y) {
            acc += BigRational::from(BigInt::from(a)) * b;
        }
        acc
    }

    pub fn pair_two_rho(&self, y: &[i64]) -> i64 {
        self.pair(&self.two_rho, y)
    }

    /// `⟨ρ, a − b⟩` for `a − b` in the coroot lattice (always an integer
    /// there; asserted).
    pub fn rho_pair_diff(&self, a: &[i64], b: &[i64]) -> i64 {
        let diff: Vec<i64> = a.iter().zip(b).map(|(&x, &y)| x - y).collect();
        let twice = self.pair_two_rho(&diff);
        assert!(twice % 2 == 0, "⟨2ρ, a−b⟩ is odd; a−b is outside the coroot lattice");
        twice / 2
    }

    /// `⟨ρ, y⟩` as an exact rational.
    pub fn rho_pair_q(&self, y: &[BigRational]) -> BigRational {
        self.pair_q(&self.two_rho, y) / BigRational::from(BigInt::from(2))
    }

    pub fn is_dominant(&self, y: &[i64]) -> bool {
        self.simple_roots.iter().all(|alpha| self.pair(alpha, y) >= 0)
    }

    pub fn is_dominant_q(&self, y: &[BigRational]) -> bool {
        self.simple_roots.iter().all(|alpha| !self.pair_q(alpha, y).is_negative())
    }

    /// The unique dominant element in the Weyl orbit of `y`.
    pub fn dominant_rep(&self, y: &[i64]) -> Cocharacter {
        let mut cur = y.to_vec();
        loop {
            let mut moved = false;
            for i in 0..self.num_simple() {
                let k = self.pair(&self.simple_roots[i], &cur);
                if k < 0 {
                    for (c, &co) in cur.iter_mut().zip(&self.simple_coroots[i]) {
                        *c -= k * co;
                    }
                    moved = true;
                }
            }
            if !moved {
                return cur;
            }
        }
    }

    pub fn dominant_rep_q(&self, y: &[BigRational]) -> RationalCocharacter {
        let mut cur = y.to_vec();
        loop {
            let mut moved = false;
            for i in 0..self.num_simple() {
                let k = self.pair_q(&self.simple_roots[i], &cur);
                if k.is_negative() {
                    for (c, &co) in cur.iter_mut().zip(&self.simple_coroots[i]) {
                        *c -= &k * BigRational::from(BigInt::from(co));
                    }
                    moved = true;
                }
            }
            if !moved {
                return cur;
            }
        }
    }

    /// The full Weyl orbit, sorted ascending in lexicographic order.
    pub fn weyl_orbit(&self, y: &[i64]) -> Vec<Cocharacter> {
        orbit_under(&self.weyl, y)
    }

    pub fn sigma_apply(&self, y: &[i64]) -> Cocharacter {
        self.sigma.apply(y)
    }

    pub fn sigma_apply_q(&self, y: &[BigRational]) -> RationalCocharacter {
        self.sigma.apply_q(y)
    }

    pub fn sigma_inverse_apply(&self, y: &[i64]) -> Cocharacter {
        self.sigma_inv.apply(y)
    }

    /// `σ^k(y)` for any `k ≥ 0`.
    pub fn sigma_pow_apply(&self, k: usize, y: &[i64]) -> Cocharacter {
        let mut cur = y.to_vec();
        for _ in 0..(k % self.sigma_order) {
            cur = self.sigma.apply(&cur);
        }
        cur
    }

    pub fn is_sigma_invariant(&self, y: &[i64]) -> bool {
        self.sigma.apply(y) == y
    }

    /// Columns of `σ − 1`, generating the augmentation sublattice of the
    /// `σ`-action (used to present coinvariants `X / (σ−1)X`).
    pub fn sigma_minus_one_generators(&self) -> Vec<Cocharacter> {
        (0..self.rank)
            .map(|k| {
                let mut e = vec![0i64; self.rank];
                e[k] = 1;
                let mut img = self.sigma.apply(&e);
                img[k] -= 1;
                img
            })
            .collect()
    }

    /// Average of `y` over the group generated by `σ`.
    pub fn sigma_average(&self, y: &[i64]) -> RationalCocharacter {
        let mut acc = vec![BigInt::zero(); self.rank];
        let mut cur = y.to_vec();
        for _ in 0..self.sigma_order {
            for (a, &c) in acc.iter_mut().zip(&cur) {
                *a += BigInt::from(c);
            }
            cur = self.sigma.apply(&cur);
        }
        let denom = BigInt::from(self.sigma_order as i64);
        acc.into_iter().map(|v| BigRational::new(v, denom.clone())).collect()
    }

    /// Least `k ≥ 1` with `σ^k(μ)` in the Weyl orbit of `μ`. Bounded by the
    /// order of `σ`.
    pub fn reflex_degree(&self, mu: &[i64]) -> usize {
        let orbit: BTreeSet<Cocharacter> = self.weyl_orbit(mu).into_iter().collect();
        let mut cur = mu.to_vec();
        for k in 1..=self.sigma_order {
            cur = self.sigma.apply(&cur);
            if orbit.contains(&cur) {
                return k;
            }
        }
        unreachable!("σ^order fixes μ, so the reflex degree is at most the order of σ")
    }

    /// `|⟨α, μ⟩| ≤ 1` for every root `α`.
    pub fn is_minuscule(&self, mu: &[i64]) -> bool {
        self.positive_roots.iter().all(|alpha| self.pair(alpha, mu).abs() <= 1)
    }

    fn levi_from_subset(&self, mut subset: Vec<usize>) -> LeviDatum {
        subset.sort_unstable();
        subset.dedup();
        let gens: Vec<IntMat> = subset.iter().map(|&i| self.reflections[i].clone()).collect();
        let weyl = weyl_closure(self.rank, &gens, WEYL_CAP)
            .expect("Levi Weyl group is a subgroup of an already-enumerated finite group");
        let weyl_sigma_fixed: Vec<IntMat> =
            weyl.iter().filter(|w| w.commutes_with(&self.sigma)).cloned().collect();

        // Positive roots of the Levi: supported on the chosen simples.
        let mut two_rho = vec![0i64; self.rank];
        for root in &self.positive_roots {
            let coeffs = crate::lattice_toolkit::in_sublattice(self.rank, &self.simple_roots, root)
                .expect("positive root expansion");
            let supported = coeffs
                .iter()
                .enumerate()
                .all(|(i, c)| c.is_zero() || subset.contains(&i));
            if supported {
                for (t, &v) in two_rho.iter_mut().zip(root) {
                    *t += v;
                }
            }
        }

        let sigma_stable = subset.iter().all(|&i| subset.contains(&self.coroot_perm[i]));

        LeviDatum { subset, weyl, weyl_sigma_fixed, two_rho, sigma_stable }
    }

    /// Levi on the simple roots pairing to zero with a dominant `y`.
    /// Panics if `y` is not dominant (the centralizer of a non-dominant
    /// vector need not be standard).
    pub fn levi_centralizer(&self, y: &[i64]) -> LeviDatum {
        assert!(self.is_dominant(y), "levi_centralizer requires a dominant vector");
        let subset: Vec<usize> = (0..self.num_simple())
            .filter(|&i| self.pair(&self.simple_roots[i], y) == 0)
            .collect();
        self.levi_from_subset(subset)
    }

    /// Same as [`levi_centralizer`](Self::levi_centralizer) for a rational
    /// point (e.g. a Newton point).
    pub fn levi_centralizer_q(&self, y: &[BigRational]) -> LeviDatum {
        assert!(self.is_dominant_q(y), "levi_centralizer_q requires a dominant vector");
        let subset: Vec<usize> = (0..self.num_simple())
            .filter(|&i| self.pair_q(&self.simple_roots[i], y).is_zero())
            .collect();
        self.levi_from_subset(subset)
    }

    /// Levi on the simple roots pairing to zero with an arbitrary vector.
    /// No dominance requirement; the caller owns the interpretation.
    pub fn levi_from_zero_pairings(&self, y: &[i64]) -> LeviDatum {
        let subset: Vec<usize> = (0..self.num_simple())
            .filter(|&i| self.pair(&self.simple_roots[i], y) == 0)
            .collect();
        self.levi_from_subset(subset)
    }

    /// Levi generated by an explicit subset of simple indices.
    pub fn levi_from_indices(&self, subset: &[usize]) -> LeviDatum {
        assert!(
            subset.iter().all(|&i| i < self.num_simple()),
            "Levi index out of range"
        );
        self.levi_from_subset(subset.to_vec())
    }

    /// The full group viewed as a Levi (all simple indices).
    pub fn full_levi(&self) -> LeviDatum {
        self.levi_from_subset((0..self.num_simple()).collect())
    }
}

/// Orbit of `y` under an explicit element list (not a closure): apply each
/// element once. Sorted ascending.
pub fn orbit_under(elements: &[IntMat], y: &[i64]) -> Vec<Cocharacter> {
    let set: BTreeSet<Cocharacter> = elements.iter().map(|w| w.apply(y)).collect();
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl2() -> BasedRootDatum {
        BasedRootDatum::new(
            2,
            vec![vec![1, -1]],
            vec![vec![1, -1]],
            vec![vec![1, 0], vec![0, 1]],
            None,
        )
        .unwrap()
    }

    // Two commuting copies of the rank-1 system, with σ swapping them.
    fn a1_a1_swap() -> BasedRootDatum {
        BasedRootDatum::new(
            2,
            vec![vec![2, 0], vec![0, 2]],
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![0, 1], vec![1, 0]],
            None,
        )
        .unwrap()
    }

    #[test]
    fn gl2_basics() {
        let d = gl2();
        assert_eq!(d.weyl().len(), 2);
        assert_eq!(d.all_roots().len(), 2);
        assert_eq!(d.positive_roots(), &[vec![1, -1]]);
        assert_eq!(d.two_rho(), &vec![1, -1]);
        assert_eq!(d.dominant_rep(&[0, 1]), vec![1, 0]);
        assert_eq!(d.weyl_orbit(&[1, 0]), vec![vec![0, 1], vec![1, 0]]);
        assert!(d.is_minuscule(&[1, 0]));
        assert!(!d.is_minuscule(&[2, 0]));
        assert!(d.is_minuscule(&[0, 0]));
        assert_eq!(d.reflex_degree(&[1, 0]), 1);
        assert_eq!(d.sigma_order(), 1);
        assert_eq!(d.weyl_sigma_fixed().len(), 2);
    }

    #[test]
    fn swapped_blocks() {
        let d = a1_a1_swap();
        assert_eq!(d.sigma_order(), 2);
        assert_eq!(d.coroot_permutation(), &[1, 0]);
        assert_eq!(d.weyl().len(), 4);
        // Only the identity and the product of both reflections commute
        // with the swap.
        assert_eq!(d.weyl_sigma_fixed().len(), 2);
        assert_eq!(d.reflex_degree(&[1, 0]), 2);
        assert!(d.is_sigma_invariant(&[3, 3]));
        assert!(!d.is_sigma_invariant(&[1, 0]));
        let avg = d.sigma_average(&[1, 0]);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(avg, vec![half.clone(), half]);
    }

    #[test]
    fn cartan_violations() {
        let bad_diag = BasedRootDatum::new(
            2,
            vec![vec![1, -1]],
            vec![vec![2, -2]],
            vec![vec![1, 0], vec![0, 1]],
            None,
        );
        assert!(matches!(bad_diag, Err(DatumError::CartanDiagonal { index: 0, value: 4 })));

        let bad_sign = BasedRootDatum::new(
            2,
            vec![vec![2, 0], vec![1, 1]],
            vec![vec![1, 0], vec![1, 1]],
            vec![vec![1, 0], vec![0, 1]],
            None,
        );
        assert!(matches!(bad_sign, Err(DatumError::CartanSign { .. })));

        let bad_zero = BasedRootDatum::new(
            3,
            vec![vec![1, -1, 0], vec![-1, 0, 2]],
            vec![vec![1, -1, 0], vec![0, 0, 1]],
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            None,
        );
        assert!(matches!(bad_zero, Err(DatumError::CartanZeroAsymmetry { .. })));
    }

    #[test]
    fn dependence_rejected() {
        let dependent = BasedRootDatum::new(
            2,
            vec![vec![1, -1], vec![-1, 1]],
            vec![vec![1, -1], vec![-1, 1]],
            vec![vec![1, 0], vec![0, 1]],
            None,
        );
        assert!(matches!(
            dependent,
            Err(DatumError::CartanSign { .. }) | Err(DatumError::DependentSimpleRoots)
        ));
    }

    #[test]
    fn sigma_violations() {
        let shear = BasedRootDatum::new(
            2,
            vec![vec![1, -1]],
            vec![vec![1, -1]],
            vec![vec![1, 1], vec![0, 1]],
            None,
        );
        assert!(matches!(shear, Err(DatumError::SigmaOrderTooLarge { .. })));

        // -1 has order two but sends the coroot to its negative.
        let negation = BasedRootDatum::new(
            2,
            vec![vec![1, -1]],
            vec![vec![1, -1]],
            vec![vec![-1, 0], vec![0, -1]],
            None,
        );
        assert!(matches!(negation, Err(DatumError::SigmaNotCorootPermutation { index: 0 })));

        let singular = BasedRootDatum::new(
            2,
            vec![vec![1, -1]],
            vec![vec![1, -1]],
            vec![vec![1, 0], vec![0, 2]],
            None,
        );
        assert!(matches!(singular, Err(DatumError::SigmaNotUnimodular)));
    }

    #[test]
    fn infinite_closure_hits_cap() {
        // A rank-3 realization of the affine Cartan [[2,−2],[−2,2]]: the
        // closure is infinite with slowly growing entries, so it trips the
        // element cap rather than overflowing.
        let mk = |alpha: &[i64], coroot: &[i64]| {
            let d = alpha.len();
            let mut rows = vec![vec![0i64; d]; d];
            for k in 0..d {
                for l in 0..d {
                    rows[k][l] = i64::from(k == l) - coroot[k] * alpha[l];
                }
            }
            IntMat::from_rows(&rows)
        };
        let gens = vec![
            mk(&[1, -1, 0], &[1, -1, 0]),
            mk(&[-1, 1, 1], &[0, 2, 0]),
        ];
        let result = weyl_closure(3, &gens, 500);
        assert!(matches!(result, Err(DatumError::WeylTooLarge { cap: 500 })));

        // A hyperbolic pair (c12·c21 = 8) blows up entrywise instead; that
        // must surface as a clean error too, not a panic.
        let wild = vec![
            mk(&[1, -1], &[1, -1]),
            mk(&[-1, 3], &[-2, 0]),
        ];
        let result = weyl_closure(2, &wild, usize::MAX);
        assert!(matches!(result, Err(DatumError::WeylEntriesOverflow)));
    }

    #[test]
    fn dominance_over_rationals() {
        let d = gl2();
        let q = |n: i64, m: i64| BigRational::new(BigInt::from(n), BigInt::from(m));
        let y = vec![q(-1, 2), q(3, 2)];
        let dom = d.dominant_rep_q(&y);
        assert_eq!(dom, vec![q(3, 2), q(-1, 2)]);
        assert!(d.is_dominant_q(&dom));
    }

    #[test]
    fn levi_structure() {
        let d = a1_a1_swap();
        let l = d.levi_centralizer(&[1, 1]);
        // ⟨α_i, (1,1)⟩ = 2 for both, so the Levi is the torus.
        assert!(l.subset().is_empty());
        assert_eq!(l.weyl().len(), 1);
        assert!(l.sigma_stable());

        let full = d.full_levi();
        assert_eq!(full.subset(), &[0, 1]);
        assert_eq!(full.weyl().len(), 4);
        assert_eq!(full.two_rho(), d.two_rho());
        assert!(full.sigma_stable());

        let one = d.levi_from_indices(&[0]);
        assert_eq!(one.weyl().len(), 2);
        assert!(!one.sigma_stable());
        assert_eq!(one.two_rho(), &vec![2, 0]);
    }

    #[test]
    fn torus_only_datum() {
        let d = BasedRootDatum::new(
            3,
            vec![],
            vec![],
            vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]],
            None,
        )
        .unwrap();
        assert_eq!(d.weyl().len(), 1);
        assert!(d.positive_roots().is_empty());
        assert_eq!(d.two_rho(), &vec![0, 0, 0]);
        assert!(d.is_dominant(&[-5, 2, 0]));
        assert_eq!(d.dominant_rep(&[-5, 2, 0]), vec![-5, 2, 0]);
        assert_eq!(d.sigma_order(), 3);
        assert_eq!(d.reflex_degree(&[1, 0, 0]), 3);
        assert!(d.is_minuscule(&[7, 0, 0]));
    }
}
