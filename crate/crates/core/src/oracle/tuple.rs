//! Matrix-level ground truth: tuples of invertible cyclotomic matrices,
//! the Dettweiler–Reiter middle convolution, Jordan data extraction, and
//! the comparison against the p-forgetful shadow of module data.
//!
//! The dictionary is fixed once and for all: a local monodromy eigenvalue
//! of angle γ corresponds to the ν-column at γ, and a Jordan block of size
//! ℓ+1 to weight ℓ.  This is exactly what the numerical Hodge data
//! determines after forgetting p, and it is the strongest statement
//! verifiable without period computations.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::invariants::{FiniteLabel, HodgeTable, ModuleData, PointLocation};

use super::cyclotomic::Cyclo;
use super::matrix::{CMatrix, Subspace};

/// r invertible matrices A_1..A_r; the monodromy at infinity is the
/// implied matrix (A_r ⋯ A_1)^{-1}.
#[derive(Clone, Debug)]
pub struct MatrixTuple {
    mats: Vec<CMatrix>,
}

impl MatrixTuple {
    pub fn new(mats: Vec<CMatrix>) -> Result<Self> {
        if mats.is_empty() {
            return Err(Error::InvalidArgument("empty matrix tuple".into()));
        }
        let n = mats[0].rows();
        for m in &mats {
            if m.rows() != n || m.cols() != n {
                return Err(Error::InvalidArgument(
                    "tuple matrices must be square of equal size".into(),
                ));
            }
            if m.rank() != n {
                return Err(Error::InvalidArgument(
                    "tuple matrices must be invertible".into(),
                ));
            }
        }
        Ok(MatrixTuple { mats })
    }

    pub fn size(&self) -> usize {
        self.mats[0].rows()
    }

    pub fn count(&self) -> usize {
        self.mats.len()
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.mats
    }

    /// (A_r ⋯ A_1)^{-1}.
    pub fn infinity_matrix(&self) -> CMatrix {
        let mut prod = CMatrix::identity(self.size());
        for m in &self.mats {
            prod = m.mul(&prod);
        }
        prod.inverse().expect("tuple matrices are invertible")
    }

    /// Largest cyclotomic order appearing in any entry.
    pub fn field_order(&self) -> u64 {
        use num_integer::Integer;
        let mut n: u64 = 1;
        for m in &self.mats {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    n = n.lcm(&m.at(r, c).order());
                }
            }
        }
        n
    }
}

/// Middle convolution MC_{λ₀} on tuples, λ₀ = exp(−2iπγ₀) with γ₀ ≠ 0:
/// the block matrices B_k of size n·r are formed, and the common invariant
/// subspace 𝒦 ⊕ … ⊕ 𝒦_r + 𝓛 (kernel blocks and common fixed space) is
/// quotiented out.
pub fn dr_convolve(tuple: &MatrixTuple, gamma0: &Angle) -> Result<MatrixTuple> {
    if gamma0.is_zero() {
        return Err(Error::InvalidArgument(
            "matrix middle convolution needs lambda0 != 1".into(),
        ));
    }
    let lambda = Cyclo::root_of_unity(gamma0);
    let n = tuple.size();
    let r = tuple.count();
    let big = n * r;

    let blocks: Vec<CMatrix> = (0..r)
        .map(|k| {
            CMatrix::from_fn(big, big, |row, col| {
                let (bi, i) = (row / n, row % n);
                let (bj, j) = (col / n, col % n);
                if bi != k {
                    // identity outside the k-th block row
                    if row == col {
                        Cyclo::one()
                    } else {
                        Cyclo::zero()
                    }
                } else {
                    let a = tuple.mats[bj].at(i, j);
                    let delta = if i == j { Cyclo::one() } else { Cyclo::zero() };
                    match bj.cmp(&k) {
                        std::cmp::Ordering::Less => lambda.mul(&a.sub(&delta)),
                        std::cmp::Ordering::Equal => lambda.mul(a),
                        std::cmp::Ordering::Greater => a.sub(&delta),
                    }
                }
            })
        })
        .collect();

    // K = ⊕_k { e_k ⊗ v : (A_k − 1)v = 0 }
    let mut spanning: Vec<Vec<Cyclo>> = Vec::new();
    for (k, a) in tuple.mats.iter().enumerate() {
        let ker = a.sub(&CMatrix::identity(n)).nullspace();
        for v in ker {
            let mut big_v = vec![Cyclo::zero(); big];
            big_v[k * n..(k + 1) * n].clone_from_slice(&v);
            spanning.push(big_v);
        }
    }
    // L = ∩_k ker(B_k − 1)
    let stacked: Vec<CMatrix> = blocks
        .iter()
        .map(|b| b.sub(&CMatrix::identity(big)))
        .collect();
    let stacked_refs: Vec<&CMatrix> = stacked.iter().collect();
    for v in CMatrix::vstack(&stacked_refs).nullspace() {
        spanning.push(v);
    }

    let w = Subspace::from_spanning(big, &spanning);
    if w.dim() == big {
        return Err(Error::DegenerateConvolution(
            "matrix middle convolution collapsed to size zero".into(),
        ));
    }
    let quotient: Vec<CMatrix> = blocks.iter().map(|b| w.quotient_action(b)).collect();
    MatrixTuple::new(quotient)
}

/// Exact Jordan type of a matrix whose eigenvalues are roots of unity:
/// (eigenvalue angle, block size) → count, via ranks of (m − λI)^k.  The
/// candidate eigenvalues are the roots of unity of the matrix's own field
/// (extended to even order so that −1 is always scanned).
pub fn jordan_data(m: &CMatrix) -> Result<BTreeMap<(Angle, u32), u64>> {
    use num_integer::Integer;
    let mut order: u64 = 1;
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            order = order.lcm(&m.at(r, c).order());
        }
    }
    jordan_data_in_order(m, order)
}

/// Jordan type with the candidate root-of-unity order given explicitly
/// (the angles scanned are k/order for k = 0..order−1, as reduced
/// fractions, plus −1 via the forced extension to even order).
pub fn jordan_data_in_order(m: &CMatrix, order: u64) -> Result<BTreeMap<(Angle, u32), u64>> {
    use num_integer::Integer;
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    let order = order.lcm(&2);

    let mut out = BTreeMap::new();
    let mut accounted: u64 = 0;
    for k in 0..order {
        let gamma = Angle::new(k as i64, order as i64).unwrap();
        let lambda = Cyclo::root_of_unity(&gamma);
        let shifted = m.sub(&CMatrix::scalar(n, &lambda));
        let mut ranks = vec![n]; // rank of the 0-th power
        let mut power = CMatrix::identity(n);
        loop {
            power = power.mul(&shifted);
            let rk = power.rank();
            ranks.push(rk);
            let len = ranks.len();
            if rk == ranks[len - 2] || len > n + 1 {
                break;
            }
        }
        if ranks[1] == n {
            continue; // not an eigenvalue
        }
        let stable = *ranks.last().unwrap();
        ranks.resize(n + 2, stable);
        for s in 1..=n {
            let count = (ranks[s - 1] + ranks[s + 1]) as i64 - 2 * ranks[s] as i64;
            if count > 0 {
                out.insert((gamma, s as u32), count as u64);
                accounted += s as u64 * count as u64;
            }
        }
    }
    if accounted != n as u64 {
        return Err(Error::UnsupportedEigenvalue(format!(
            "only {accounted} of {n} dimensions have root-of-unity eigenvalues \
             in the working cyclotomic field (order {order})"
        )));
    }
    Ok(out)
}

/// One disagreement between module data and a matrix tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mismatch {
    Rank {
        data_rank: u64,
        tuple_size: u64,
    },
    PointCount {
        data_points: usize,
        tuple_points: usize,
    },
    Jordan {
        location: PointLocation,
        gamma: Angle,
        block_size: u32,
        data_count: u64,
        tuple_count: u64,
    },
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mismatch::Rank {
                data_rank,
                tuple_size,
            } => write!(f, "total rank {data_rank} != tuple size {tuple_size}"),
            Mismatch::PointCount {
                data_points,
                tuple_points,
            } => write!(
                f,
                "{data_points} finite points in the data but {tuple_points} tuple positions"
            ),
            Mismatch::Jordan {
                location,
                gamma,
                block_size,
                data_count,
                tuple_count,
            } => write!(
                f,
                "at {location}: {data_count} blocks of size {block_size} with angle {gamma} \
                 in the data, {tuple_count} in the tuple"
            ),
        }
    }
}

/// Checks that the p-forgetful content of `data` matches the local Jordan
/// data of `tuple`: finite points in order against A_1..A_r, plus the
/// implied infinity matrix.  Mismatches are data, not failures.
pub fn compare(data: &ModuleData, tuple: &MatrixTuple) -> Result<Vec<Mismatch>> {
    use num_integer::Integer;
    let mut out = Vec::new();
    if data.rank() != tuple.size() as u64 {
        out.push(Mismatch::Rank {
            data_rank: data.rank(),
            tuple_size: tuple.size() as u64,
        });
    }
    // scan eigenvalues in the compositum of the tuple field and every
    // angle denominator appearing in the data
    let mut order = tuple.field_order();
    for table in data.points().values() {
        for g in table.angles() {
            order = order.lcm(&g.denominator());
        }
    }
    let finite: Vec<(&FiniteLabel, &HodgeTable)> = data.finite_points().collect();
    if finite.len() != tuple.count() {
        out.push(Mismatch::PointCount {
            data_points: finite.len(),
            tuple_points: tuple.count(),
        });
        return Ok(out);
    }
    for ((label, table), mat) in finite.iter().zip(tuple.matrices()) {
        compare_point(
            &PointLocation::Finite((*label).clone()),
            table,
            mat,
            order,
            &mut out,
        )?;
    }
    compare_point(
        &PointLocation::Infinity,
        data.infinity_table(),
        &tuple.infinity_matrix(),
        order,
        &mut out,
    )?;
    Ok(out)
}

fn compare_point(
    location: &PointLocation,
    table: &HodgeTable,
    mat: &CMatrix,
    order: u64,
    out: &mut Vec<Mismatch>,
) -> Result<()> {
    let expected = table.jordan_blocks();
    let actual = jordan_data_in_order(mat, order)?;
    let keys: std::collections::BTreeSet<_> =
        expected.keys().chain(actual.keys()).cloned().collect();
    for key in keys {
        let d = expected.get(&key).copied().unwrap_or(0);
        let t = actual.get(&key).copied().unwrap_or(0);
        if d != t {
            out.push(Mismatch::Jordan {
                location: location.clone(),
                gamma: key.0,
                block_size: key.1,
                data_count: d,
                tuple_count: t,
            });
        }
    }
    Ok(())
}

/// Realizes rank-one module data as a tuple of 1×1 matrices.  The finite
/// labels are returned in the order matching tuple positions.
pub fn realize_rank_one(data: &ModuleData) -> Result<(Vec<FiniteLabel>, MatrixTuple)> {
    if data.rank() != 1 {
        return Err(Error::InvalidArgument(format!(
            "rank-one realization asked for data of rank {}",
            data.rank()
        )));
    }
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    let mut total = Angle::zero();
    for (label, table) in data.finite_points() {
        let entries: Vec<_> = table.iter().collect();
        if entries.len() != 1 || *entries[0].1 != 1 || entries[0].0 .1 != 0 {
            return Err(Error::InvalidArgument(
                "rank-one data must carry a single size-one block per point".into(),
            ));
        }
        let gamma = entries[0].0 .0;
        total = total.add(&gamma);
        labels.push(label.clone());
        mats.push(CMatrix::scalar(1, &Cyclo::root_of_unity(&gamma)));
    }
    let inf: Vec<_> = data.infinity_table().iter().collect();
    if inf.len() != 1 || *inf[0].1 != 1 || inf[0].0 .1 != 0 {
        return Err(Error::InvalidArgument(
            "rank-one data must carry a single size-one block at infinity".into(),
        ));
    }
    if inf[0].0 .0 != total.neg() {
        return Err(Error::InconsistentData(format!(
            "rank-one data is not realizable: infinity angle {} but finite angles sum to {}",
            inf[0].0 .0,
            total
        )));
    }
    Ok((labels, MatrixTuple::new(mats)?))
}

/// Multiplies each local matrix by the rank-one twist eigenvalue; points
/// newly made singular by the twist enter as identity matrices at their
/// sorted position.
pub fn twist_tuple(
    labels: &[FiniteLabel],
    tuple: &MatrixTuple,
    tw: &crate::transforms::TwistParameter,
) -> Result<(Vec<FiniteLabel>, MatrixTuple)> {
    let mut labels: Vec<FiniteLabel> = labels.to_vec();
    let mut mats: Vec<CMatrix> = tuple.matrices().to_vec();
    for (label, _) in tw.exponents() {
        if !labels.contains(label) {
            let idx = labels
                .iter()
                .position(|l| l > label)
                .unwrap_or(labels.len());
            labels.insert(idx, label.clone());
            mats.insert(idx, CMatrix::identity(tuple.size()));
        }
    }
    for (label, mat) in labels.iter().zip(mats.iter_mut()) {
        let e = tw.exponent_at(label);
        if !e.is_zero() {
            *mat = mat.scale(&Cyclo::root_of_unity(&e));
        }
    }
    Ok((labels, MatrixTuple::new(mats)?))
}

/// Certifies absolute irreducibility: the unital algebra spanned by words
/// in the tuple matrices must be the full matrix algebra.  Random words are
/// tried first (seeded), then the deterministic span closure decides.
pub fn is_absolutely_irreducible(tuple: &MatrixTuple, rng: &mut impl Rng) -> bool {
    let n = tuple.size();
    if n == 1 {
        return true;
    }
    let ambient = n * n;
    let flatten = |m: &CMatrix| -> Vec<Cyclo> {
        let mut v = Vec::with_capacity(ambient);
        for r in 0..n {
            for c in 0..n {
                v.push(m.at(r, c).clone());
            }
        }
        v
    };

    let mut span = Subspace::from_spanning(ambient, &[flatten(&CMatrix::identity(n))]);
    let mut basis_mats = vec![CMatrix::identity(n)];

    // randomized warm start: products of random generators
    let mut word = CMatrix::identity(n);
    for _ in 0..(2 * ambient) {
        let pick = rng.gen_range(0..tuple.count());
        word = word.mul(&tuple.matrices()[pick]);
        if span.insert(&flatten(&word)) {
            basis_mats.push(word.clone());
        }
        if span.dim() == ambient {
            return true;
        }
    }

    // deterministic closure
    let mut frontier = basis_mats;
    while !frontier.is_empty() && span.dim() < ambient {
        let mut next = Vec::new();
        for b in &frontier {
            for g in tuple.matrices() {
                let prod = b.mul(g);
                if span.insert(&flatten(&prod)) {
                    next.push(prod);
                }
            }
        }
        frontier = next;
    }
    span.dim() == ambient
}
