//! Restricted Stirling and Lah number triangles and their exact inverses.
//!
//! Every number here is computed by two independent routes that the test
//! suites force to agree:
//!
//! * a brute-force oracle summing `Π a_{|P_i|}` over all set partitions of
//!   `[n]` into `k` blocks, and
//! * generating-function columns: the EGF of column `k` of `A_a` is
//!   `a(x)^k/k!`, and the inverse matrix is `A_b` for `b(x) = a⁻¹(x)`.
//!
//! Matrices are 1-indexed to match the usual `[a_{n,k}]_{n,k ≥ 1}`
//! convention; the 0th row and column of the ambient exponential Riordan
//! array are never materialized.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::partitions::{for_each_partition, for_each_partition_into};
use crate::restriction::RestrictionSet;
use crate::series::{factorial, series_from_restriction, PowerSeries, SequenceKind};

/// Partition-sum oracles refuse `n` above this bound to keep runtimes
/// desk-scale (Bell(12) ≈ 4.2·10⁶ partitions).
pub const ORACLE_CAP: u64 = 12;

/// Matrix builders refuse sizes above this bound.
pub const MATRIX_CAP: u64 = 64;

/// The matching brute force refuses `n` above this bound.
pub const BESSEL_CAP: u64 = 9;

/// A family of restricted numbers: the restriction set, the block weight
/// kind, and the stretch factor `d` (the effective restriction is `R(d)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedNumberSpec {
    pub set: RestrictionSet,
    pub kind: SequenceKind,
    pub d: u64,
}

impl RestrictedNumberSpec {
    pub fn new(set: RestrictionSet, kind: SequenceKind, d: u64) -> Self {
        assert!(d >= 1);
        RestrictedNumberSpec { set, kind, d }
    }

    /// The sequence value `a_m = w(m)·1{m ∈ R(d)}`.
    pub fn sequence_value(&self, m: u64) -> BigInt {
        if self.set.stretch(self.d).contains(m) {
            self.kind.weight(m)
        } else {
            BigInt::zero()
        }
    }

    /// The EGF of the sequence, in ordinary-coefficient storage.
    pub fn egf(&self, order: usize) -> Result<PowerSeries> {
        series_from_restriction(&self.set, self.kind, self.d, order)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "R": self.set.to_string(),
            "kind": self.kind.name(),
            "d": self.d,
        })
    }
}

/// All restricted numbers `a_{n,k}` for `k = 1..=n`, by brute-force
/// enumeration of every set partition of `[n]`.
pub fn oracle_row(n: u64, spec: &RestrictedNumberSpec) -> Result<Vec<BigInt>> {
    if n > ORACLE_CAP {
        return Err(Error::CapExceeded {
            what: "oracle n",
            requested: n,
            cap: ORACLE_CAP,
        });
    }
    // a_m is needed for m ≤ n only.
    let weights: Vec<BigInt> = (0..=n).map(|m| spec.sequence_value(m)).collect();
    let mut row = vec![BigInt::zero(); n as usize];
    for_each_partition(n as usize, &mut |blocks| {
        let mut product = BigInt::one();
        for block in blocks {
            let w = &weights[block.len()];
            if w.is_zero() {
                return;
            }
            product *= w;
        }
        row[blocks.len() - 1] += product;
    });
    Ok(row)
}

/// The restricted number `a_{n,k}`: the sum of `Π a_{|P_i|}` over all set
/// partitions of `[n]` into `k` blocks.
pub fn restricted_number_oracle(n: u64, k: u64, spec: &RestrictedNumberSpec) -> Result<BigInt> {
    if n > ORACLE_CAP {
        return Err(Error::CapExceeded {
            what: "oracle n",
            requested: n,
            cap: ORACLE_CAP,
        });
    }
    if k < 1 || k > n {
        return Ok(BigInt::zero());
    }
    let weights: Vec<BigInt> = (0..=n).map(|m| spec.sequence_value(m)).collect();
    let mut total = BigInt::zero();
    for_each_partition_into(n as usize, k as usize, &mut |blocks| {
        let mut product = BigInt::one();
        for block in blocks {
            let w = &weights[block.len()];
            if w.is_zero() {
                return;
            }
            product *= w;
        }
        total += product;
    });
    Ok(total)
}

/// A 1-indexed lower-triangular matrix of exact big integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl TriangularMatrix {
    pub fn identity(size: usize) -> Self {
        TriangularMatrix {
            rows: (1..=size)
                .map(|n| {
                    let mut row = vec![BigInt::zero(); n];
                    row[n - 1] = BigInt::one();
                    row
                })
                .collect(),
        }
    }

    /// Builds from rows `1..=N`, row `n` holding entries `(n, 1..=n)`.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::Domain(format!(
                    "row {} must have exactly {} entries",
                    i + 1,
                    i + 1
                )));
            }
        }
        Ok(TriangularMatrix { rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Entry at 1-indexed `(n, k)`; zero above the diagonal.
    pub fn entry(&self, n: usize, k: usize) -> BigInt {
        assert!(
            (1..=self.size()).contains(&n) && k >= 1,
            "indices are 1-based and bounded by the size"
        );
        if k > n {
            BigInt::zero()
        } else {
            self.rows[n - 1][k - 1].clone()
        }
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn multiply(&self, other: &TriangularMatrix) -> Result<TriangularMatrix> {
        if self.size() != other.size() {
            return Err(Error::Domain("matrix sizes differ".into()));
        }
        let n = self.size();
        let mut rows = Vec::with_capacity(n);
        for i in 1..=n {
            let mut row = vec![BigInt::zero(); i];
            for k in 1..=i {
                let mut s = BigInt::zero();
                for j in k..=i {
                    s += self.rows[i - 1][j - 1].clone() * &other.rows[j - 1][k - 1];
                }
                row[k - 1] = s;
            }
            rows.push(row);
        }
        Ok(TriangularMatrix { rows })
    }

    /// CSV emission with header `n,k,value`, rows `n = 1..=N`, `k = 1..=n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,value\n");
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                out.push_str(&format!("{},{},{}\n", i + 1, j + 1, v));
            }
        }
        out
    }

    /// JSON emission; big integers are serialized as strings.
    pub fn to_json(&self, spec: Option<&RestrictedNumberSpec>) -> serde_json::Value {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|v| v.to_string()).collect())
            .collect();
        match spec {
            Some(spec) => json!({ "spec": spec.to_json(), "N": self.size(), "rows": rows }),
            None => json!({ "N": self.size(), "rows": rows }),
        }
    }
}

fn integral(value: BigRational, n: usize, k: usize, what: &str) -> Result<BigInt> {
    if !value.is_integer() {
        return Err(Error::NonIntegerEntry {
            n,
            k,
            detail: format!("{what} produced {value}"),
        });
    }
    Ok(value.to_integer())
}

/// Builds the `N×N` triangle whose column-`k` EGF is `a(x)^k/k!`, i.e. the
/// matrix `A_a` of restricted numbers for the spec's sequence.
pub fn build_matrix(spec: &RestrictedNumberSpec, size: u64) -> Result<TriangularMatrix> {
    let series = spec.egf(size as usize)?;
    matrix_from_series(&series, size)
}

/// Builds the `N×N` triangle whose column-`k` EGF is `f(x)^k/k!` for an
/// arbitrary order-1 series `f`. Entries must come out integral.
pub fn matrix_from_series(f: &PowerSeries, size: u64) -> Result<TriangularMatrix> {
    if size < 1 {
        return Err(Error::Domain("matrix size must be ≥ 1".into()));
    }
    if size > MATRIX_CAP {
        return Err(Error::CapExceeded {
            what: "matrix size",
            requested: size,
            cap: MATRIX_CAP,
        });
    }
    let n = size as usize;
    if f.order() < n {
        return Err(Error::Domain(format!(
            "series order {} is too small for a {n}×{n} matrix",
            f.order()
        )));
    }
    let factorials: Vec<BigInt> = (0..=n as u64).map(factorial).collect();
    let mut rows: Vec<Vec<BigInt>> = (1..=n).map(|r| vec![BigInt::zero(); r]).collect();
    let mut power = f.clone();
    for k in 1..=n {
        let k_fact = BigRational::from_integer(factorials[k].clone());
        for r in k..=n {
            let value = power.coeff(r) * BigRational::from_integer(factorials[r].clone()) / &k_fact;
            rows[r - 1][k - 1] = integral(value, r, k, "EGF column extraction")?;
        }
        if k < n {
            power = power.multiply(f)?;
        }
    }
    TriangularMatrix::from_rows(rows)
}

/// Exact inverse of a lower-triangular integer matrix by forward
/// substitution. Fails on a zero diagonal entry; any non-exact division
/// signals an internal inconsistency.
pub fn invert_triangular(m: &TriangularMatrix) -> Result<TriangularMatrix> {
    let size = m.size();
    for i in 1..=size {
        if m.rows[i - 1][i - 1].is_zero() {
            return Err(Error::NotInvertible(i));
        }
    }
    let mut inv: Vec<Vec<BigInt>> = (1..=size).map(|r| vec![BigInt::zero(); r]).collect();
    for k in 1..=size {
        let dk = &m.rows[k - 1][k - 1];
        inv[k - 1][k - 1] = exact_divide(BigInt::one(), dk, k, k)?;
        for n in (k + 1)..=size {
            let mut s = BigInt::zero();
            for j in k..n {
                let a = &m.rows[n - 1][j - 1];
                if a.is_zero() {
                    continue;
                }
                let b = &inv[j - 1][k - 1];
                if b.is_zero() {
                    continue;
                }
                s += a * b;
            }
            inv[n - 1][k - 1] = exact_divide(-s, &m.rows[n - 1][n - 1], n, k)?;
        }
    }
    TriangularMatrix::from_rows(inv)
}

fn exact_divide(num: BigInt, den: &BigInt, n: usize, k: usize) -> Result<BigInt> {
    let (q, r) = num_integer::Integer::div_rem(&num, den);
    if !r.is_zero() {
        return Err(Error::NonIntegerEntry {
            n,
            k,
            detail: format!("{num} is not divisible by {den}"),
        });
    }
    Ok(q)
}

/// The inverse matrix by the Riordan-group route: `A_a⁻¹ = A_b` where
/// `b(x) = a⁻¹(x)` is the compositional inverse of the spec's EGF.
pub fn inverse_matrix_via_series(
    spec: &RestrictedNumberSpec,
    size: u64,
) -> Result<TriangularMatrix> {
    if !spec.set.contains(1) {
        return Err(Error::Domain(
            "the inverse matrix exists if and only if 1 ∈ R".into(),
        ));
    }
    let reverted = spec.egf(size as usize)?.revert()?;
    matrix_from_series(&reverted, size)
}

/// The `(n, k)` entry of `A_a⁻¹`, computed by both the triangular-inversion
/// route and the Riordan route; the two must agree on the whole `N×N`
/// truncation.
pub fn inverse_entry(n: u64, k: u64, spec: &RestrictedNumberSpec, size: u64) -> Result<BigInt> {
    if n < 1 || k < 1 || n > size || k > size {
        return Err(Error::Domain(format!(
            "entry ({n}, {k}) is outside the {size}×{size} truncation"
        )));
    }
    if !spec.set.contains(1) {
        return Err(Error::Domain(
            "the inverse matrix exists if and only if 1 ∈ R".into(),
        ));
    }
    let by_substitution = invert_triangular(&build_matrix(spec, size)?)?;
    let by_series = inverse_matrix_via_series(spec, size)?;
    if by_substitution != by_series {
        return Err(Error::Domain(
            "internal inconsistency: the two inverse routes disagree".into(),
        ));
    }
    Ok(if k > n {
        BigInt::zero()
    } else {
        by_substitution.entry(n as usize, k as usize)
    })
}

/// Brute-force count of matchings with exactly `size` edges on `vertices`
/// labeled vertices, by explicit enumeration.
pub fn count_matchings(vertices: usize, size: usize) -> BigInt {
    fn go(free: u32, edges_left: usize, count: &mut BigInt) {
        if edges_left == 0 {
            *count += 1;
            return;
        }
        if (free.count_ones() as usize) < 2 * edges_left {
            return;
        }
        let v = free.trailing_zeros();
        let rest = free & !(1 << v);
        // v stays unmatched:
        go(rest, edges_left, count);
        // or v pairs with any remaining free vertex:
        let mut others = rest;
        while others != 0 {
            let w = others.trailing_zeros();
            others &= !(1 << w);
            go(rest & !(1 << w), edges_left - 1, count);
        }
    }
    assert!(vertices <= 32);
    let mut count = BigInt::zero();
    let free = if vertices == 32 {
        u32::MAX
    } else {
        (1u32 << vertices) - 1
    };
    go(free, size, &mut count);
    count
}

/// Checks the Bessel-number identity: `(−1)^{n−k}·{n \brace k}⁻¹_{[2]}`
/// equals the number of size-`(n−k)` matchings of `K_{2n−1−k}`.
pub fn bessel_matching_check(n: u64, k: u64) -> Result<bool> {
    if n > BESSEL_CAP {
        return Err(Error::CapExceeded {
            what: "bessel n",
            requested: n,
            cap: BESSEL_CAP,
        });
    }
    if k < 1 || k > n {
        return Err(Error::Domain("bessel check needs 1 ≤ k ≤ n".into()));
    }
    let spec = RestrictedNumberSpec::new(RestrictionSet::up_to(2), SequenceKind::Set, 1);
    let entry = inverse_entry(n, k, &spec, n)?;
    let signed = if (n - k) % 2 == 0 { entry } else { -entry };
    let matchings = count_matchings((2 * n - 1 - k) as usize, (n - k) as usize);
    Ok(signed == matchings)
}

/// Signed helper used in sign checks: `(−1)^e`.
pub fn sign_pow(e: u64) -> BigInt {
    if e % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// True iff `value` is zero or has sign `(−1)^e`.
pub fn has_sign_or_zero(value: &BigInt, e: u64) -> bool {
    value.is_zero() || (value.sign() == (sign_pow(e)).sign())
}

#[allow(unused)]
fn to_u64(v: &BigInt) -> Option<u64> {
    v.to_u64()
}
