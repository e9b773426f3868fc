//! Alternating bilinear maps `B: V × V → W` and power maps `F: V → W`.
//!
//! `B` is stored only as its matrix on `V ∧ V` (shape `m × n(n-1)/2`), so a
//! uniformly random matrix is a uniformly random element of `Alt(V, W)`.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::field::Prime;
use crate::gf2::{parity128, parity64, pack64, unpack64};
use crate::matrix::FpMatrix;
use crate::span::SpanBuilder;
use crate::subspace::Subspace;
use crate::wedge::WedgeIndex;
use crate::{Error, Result};

fn uniform_matrix<R: Rng + ?Sized>(p: Prime, rows: usize, cols: usize, rng: &mut R) -> FpMatrix {
    let q = p.get();
    let data = (0..rows * cols).map(|_| rng.gen_range(0..q) as u8).collect();
    FpMatrix::from_raw(p, rows, cols, data)
}

fn check_len(v: &[u8], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingMap {
    n: usize,
    m: usize,
    wedge: WedgeIndex,
    coeff: FpMatrix,
    /// Rows of `coeff` as bit masks over `V ∧ V` (`F_2`, `n <= 16`).
    packed: Option<Vec<u128>>,
}

impl AlternatingMap {
    /// Wraps a coefficient matrix of shape `m × n(n-1)/2`.
    pub fn new(n: usize, coeff: FpMatrix) -> Result<AlternatingMap> {
        let wedge = WedgeIndex::new(n);
        if coeff.cols() != wedge.len() {
            return Err(Error::DimensionMismatch { expected: wedge.len(), found: coeff.cols() });
        }
        let packed = (coeff.prime().is_two() && wedge.len() <= 128).then(|| {
            coeff.row_iter().map(crate::gf2::pack128).collect()
        });
        Ok(AlternatingMap { n, m: coeff.rows(), wedge, coeff, packed })
    }

    pub fn zero(p: Prime, n: usize, m: usize) -> AlternatingMap {
        let cols = n * n.saturating_sub(1) / 2;
        AlternatingMap::new(n, FpMatrix::zeros(p, m, cols)).expect("shape is consistent")
    }

    /// Builds `B` from entries `(k, i, j, value)` meaning `B_k(e_i, e_j) = value`
    /// for `i < j` (0-based).
    pub fn from_entries(p: Prime, n: usize, m: usize, entries: &[(usize, usize, usize, i64)]) -> Result<AlternatingMap> {
        let mut b = AlternatingMap::zero(p, n, m);
        for &(k, i, j, v) in entries {
            if k >= m || i >= j || j >= n {
                return Err(Error::InvalidParams(alloc::format!("bad entry ({k}, {i}, {j})")));
            }
            let idx = b.wedge.index_of(i, j);
            b.coeff.set(k, idx, p.reduce(v));
        }
        AlternatingMap::new(n, b.coeff)
    }

    /// The standard symplectic form on `F_p^n` (`n` even) with `m = 1`:
    /// `B(e_{2t}, e_{2t+1}) = 1`.
    pub fn symplectic(p: Prime, n: usize) -> Result<AlternatingMap> {
        if !n.is_multiple_of(2) {
            return Err(Error::InvalidParams(alloc::format!("symplectic form needs even n, got {n}")));
        }
        let entries: Vec<_> = (0..n / 2).map(|t| (0, 2 * t, 2 * t + 1, 1)).collect();
        AlternatingMap::from_entries(p, n, 1, &entries)
    }

    /// Uniform element of `Alt(F_p^n, F_p^m)`: every coefficient i.i.d.
    /// uniform on `[0, p)`.
    pub fn sample<R: Rng + ?Sized>(p: Prime, n: usize, m: usize, rng: &mut R) -> AlternatingMap {
        let cols = n * n.saturating_sub(1) / 2;
        AlternatingMap::new(n, uniform_matrix(p, m, cols, rng)).expect("shape is consistent")
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.coeff.prime()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coeff(&self) -> &FpMatrix {
        &self.coeff
    }

    pub fn wedge(&self) -> &WedgeIndex {
        &self.wedge
    }

    pub(crate) fn packed_rows(&self) -> Option<&[u128]> {
        self.packed.as_deref()
    }

    /// `B(u, v)`.
    pub fn apply(&self, u: &[u8], v: &[u8]) -> Result<Vec<u8>> {
        check_len(u, self.n)?;
        check_len(v, self.n)?;
        Ok(self.apply_unchecked(u, v))
    }

    pub(crate) fn apply_unchecked(&self, u: &[u8], v: &[u8]) -> Vec<u8> {
        let w = self.wedge.wedge_unchecked(self.prime(), u, v);
        self.apply_wedge(&w)
    }

    /// Image of a vector of `V ∧ V`.
    pub fn apply_wedge(&self, w: &[u8]) -> Vec<u8> {
        self.coeff.mul_vec(w).expect("wedge length matches")
    }

    /// Packed `B(u, v)` over `F_2` (`n <= 16`, `m <= 64`).
    #[inline]
    pub fn apply_packed(&self, u: u64, v: u64) -> u64 {
        let rows = self.packed.as_ref().expect("packed representation");
        let w = self.wedge.wedge_packed(u, v);
        rows.iter().enumerate().fold(0u64, |acc, (k, &r)| acc | ((parity128(r & w) as u64) << k))
    }

    /// `B(H, H)`: span of `B(b_r, b_s)` over basis pairs `r < s`.
    pub fn image_span(&self, h: &Subspace) -> Result<Subspace> {
        check_len(&vec![0; h.ambient_dim()], self.n)?;
        let mut sb = SpanBuilder::new(self.prime(), self.m);
        let rows: Vec<&[u8]> = h.basis_rows().collect();
        for r in 0..rows.len() {
            for s in r + 1..rows.len() {
                sb.insert(&self.apply_unchecked(rows[r], rows[s]));
            }
        }
        Ok(sb.to_subspace())
    }

    /// `B(V, V) = W`.
    pub fn is_surjective(&self) -> bool {
        self.coeff.rank() == self.m
    }

    /// The same map on coordinates permuted/mixed by `g`: `(B∘g)(u, v) = B(gu, gv)`
    /// where `g` is an invertible `n × n` matrix acting on column vectors.
    pub fn precompose(&self, g: &FpMatrix) -> Result<AlternatingMap> {
        if g.rows() != self.n || g.cols() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: g.rows() });
        }
        let p = self.prime();
        let gt = g.transpose();
        let cols: Vec<Vec<u8>> = gt.to_rows();
        let mut coeff = FpMatrix::zeros(p, self.m, self.wedge.len());
        for (idx, &(i, j)) in self.wedge.pairs().iter().enumerate() {
            let img = self.apply_unchecked(&cols[i], &cols[j]);
            for (k, &x) in img.iter().enumerate() {
                coeff.set(k, idx, x);
            }
        }
        AlternatingMap::new(self.n, coeff)
    }
}

/// Linear `F: V → W` for odd `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearPowerMap {
    matrix: FpMatrix,
}

impl LinearPowerMap {
    /// `matrix` has shape `m × n`; column `i` is `F(e_i)`.
    pub fn new(matrix: FpMatrix) -> Result<LinearPowerMap> {
        if matrix.prime().is_two() {
            return Err(Error::InvalidParams("linear power maps need odd p".into()));
        }
        Ok(LinearPowerMap { matrix })
    }

    /// Coordinate projection: `F(e_i) = f_i` for `i < m`, zero otherwise.
    pub fn canonical(p: Prime, n: usize, m: usize) -> Result<LinearPowerMap> {
        if m > n {
            return Err(Error::InvalidParams(alloc::format!("need m <= n, got m={m}, n={n}")));
        }
        let mut a = FpMatrix::zeros(p, m, n);
        for i in 0..m {
            a.set(i, i, 1);
        }
        LinearPowerMap::new(a)
    }

    pub fn prime(&self) -> Prime {
        self.matrix.prime()
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    pub fn m(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[u8]) -> Result<Vec<u8>> {
        self.matrix.mul_vec(x)
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::from_matrix(&self.matrix.kernel())
    }

    /// `F(H)`.
    pub fn image_span(&self, h: &Subspace) -> Result<Subspace> {
        let mut sb = SpanBuilder::new(self.prime(), self.m());
        for b in h.basis_rows() {
            sb.insert(&self.apply(b)?);
        }
        Ok(sb.to_subspace())
    }

    /// `F∘g` for an invertible `n × n` matrix `g`.
    pub fn precompose(&self, g: &FpMatrix) -> Result<LinearPowerMap> {
        LinearPowerMap::new(self.matrix.mul(g)?)
    }
}

/// Quadratic `F: F_2^n → F_2^m`, `F_k(x) = Σ_{i<=j} Q_k[i,j] x_i x_j`.
///
/// Row `k` of `coeff` lists `Q_k[i,j]` for `i <= j` in lexicographic order,
/// `n(n+1)/2` entries. The diagonal holds `F(e_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticMap {
    n: usize,
    coeff: FpMatrix,
    /// `upper[k*n + i]`: bit mask of `j >= i` with `Q_k[i,j] = 1`.
    upper: Vec<u64>,
}

impl QuadraticMap {
    pub fn new(n: usize, coeff: FpMatrix) -> Result<QuadraticMap> {
        if !coeff.prime().is_two() {
            return Err(Error::FieldMismatch { expected: 2, found: coeff.prime().get() });
        }
        let want = n * (n + 1) / 2;
        if coeff.cols() != want {
            return Err(Error::DimensionMismatch { expected: want, found: coeff.cols() });
        }
        if n > 64 {
            return Err(Error::InvalidParams("quadratic maps support n <= 64".into()));
        }
        let mut upper = vec![0u64; coeff.rows() * n];
        for k in 0..coeff.rows() {
            let mut idx = 0;
            for i in 0..n {
                for j in i..n {
                    if coeff.get(k, idx) == 1 {
                        upper[k * n + i] |= 1 << j;
                    }
                    idx += 1;
                }
            }
        }
        Ok(QuadraticMap { n, coeff, upper })
    }

    pub fn zero(n: usize, m: usize) -> QuadraticMap {
        QuadraticMap::new(n, FpMatrix::zeros(Prime::TWO, m, n * (n + 1) / 2)).expect("valid shape")
    }

    /// Uniform quadratic map: all coefficients i.i.d. uniform bits.
    pub fn sample<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> QuadraticMap {
        let cols = n * (n + 1) / 2;
        QuadraticMap::new(n, uniform_matrix(Prime::TWO, m, cols, rng)).expect("valid shape")
    }

    /// Position of `Q[i,j]` (`i <= j`) within a coefficient row.
    pub fn index_of(n: usize, i: usize, j: usize) -> usize {
        debug_assert!(i <= j && j < n);
        i * (2 * n - i + 1) / 2 + (j - i)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.coeff.rows()
    }

    pub fn coeff(&self) -> &FpMatrix {
        &self.coeff
    }

    /// Packed evaluation; bit `k` of the result is `F_k(x)`.
    #[inline]
    pub fn apply_packed(&self, x: u64) -> u64 {
        let n = self.n;
        let mut out = 0u64;
        for k in 0..self.m() {
            let rows = &self.upper[k * n..(k + 1) * n];
            let mut bits = x;
            let mut acc = 0u32;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                acc ^= parity64(rows[i] & x);
                bits &= bits - 1;
            }
            out |= (acc as u64) << k;
        }
        out
    }

    pub fn apply(&self, x: &[u8]) -> Result<Vec<u8>> {
        check_len(x, self.n)?;
        Ok(unpack64(self.apply_packed(pack64(x)), self.m()))
    }

    /// The alternating map `B(x, y) = F(x + y) + F(x) + F(y)`; its
    /// `(i, j)` coefficient in row `k` is `Q_k[i, j]` for `i < j`.
    pub fn associated_b(&self) -> AlternatingMap {
        let n = self.n;
        let wedge = WedgeIndex::new(n);
        let mut coeff = FpMatrix::zeros(Prime::TWO, self.m(), wedge.len());
        for k in 0..self.m() {
            for (idx, &(i, j)) in wedge.pairs().iter().enumerate() {
                coeff.set(k, idx, self.coeff.get(k, QuadraticMap::index_of(n, i, j)));
            }
        }
        AlternatingMap::new(n, coeff).expect("valid shape")
    }

    /// The quadratic map with zero diagonal whose polar form is `b`.
    pub fn lift_of(b: &AlternatingMap) -> Result<QuadraticMap> {
        if !b.prime().is_two() {
            return Err(Error::FieldMismatch { expected: 2, found: b.prime().get() });
        }
        let n = b.n();
        let mut coeff = FpMatrix::zeros(Prime::TWO, b.m(), n * (n + 1) / 2);
        for k in 0..b.m() {
            for (idx, &(i, j)) in b.wedge().pairs().iter().enumerate() {
                coeff.set(k, QuadraticMap::index_of(n, i, j), b.coeff().get(k, idx));
            }
        }
        QuadraticMap::new(n, coeff)
    }

    /// `F(H) = span{F(b_i)} + B(H, H)`, using
    /// `F(Σ x_i b_i) = Σ x_i F(b_i) + Σ_{i<j} x_i x_j B(b_i, b_j)` over `F_2`.
    pub fn image_span(&self, h: &Subspace) -> Result<Subspace> {
        check_len(&vec![0; h.ambient_dim()], self.n)?;
        if !h.prime().is_two() {
            return Err(Error::FieldMismatch { expected: 2, found: h.prime().get() });
        }
        let b = self.associated_b();
        let basis: Vec<u64> = h.packed_basis();
        let mut sb = SpanBuilder::new(Prime::TWO, self.m());
        for &x in &basis {
            sb.insert(&unpack64(self.apply_packed(x), self.m()));
        }
        for r in 0..basis.len() {
            for s in r + 1..basis.len() {
                let rows: Vec<u8> = unpack64(basis[r], self.n);
                let cols: Vec<u8> = unpack64(basis[s], self.n);
                sb.insert(&b.apply_unchecked(&rows, &cols));
            }
        }
        Ok(sb.to_subspace())
    }
}

/// The power map `F` paired with `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PowerMap {
    Linear(LinearPowerMap),
    Quadratic(QuadraticMap),
}

impl PowerMap {
    pub fn n(&self) -> usize {
        match self {
            PowerMap::Linear(f) => f.n(),
            PowerMap::Quadratic(f) => f.n(),
        }
    }

    pub fn m(&self) -> usize {
        match self {
            PowerMap::Linear(f) => f.m(),
            PowerMap::Quadratic(f) => f.m(),
        }
    }

    pub fn prime(&self) -> Prime {
        match self {
            PowerMap::Linear(f) => f.prime(),
            PowerMap::Quadratic(_) => Prime::TWO,
        }
    }

    pub fn apply(&self, x: &[u8]) -> Result<Vec<u8>> {
        match self {
            PowerMap::Linear(f) => f.apply(x),
            PowerMap::Quadratic(f) => f.apply(x),
        }
    }

    /// `F(H)`, the span of the image of `F` on `H`.
    pub fn image_span(&self, h: &Subspace) -> Result<Subspace> {
        match self {
            PowerMap::Linear(f) => f.image_span(h),
            PowerMap::Quadratic(f) => f.image_span(h),
        }
    }

    /// Coefficient rows as serialized in certificates.
    pub fn coeff(&self) -> &FpMatrix {
        match self {
            PowerMap::Linear(f) => f.matrix(),
            PowerMap::Quadratic(f) => f.coeff(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::unit;
    use rand::rngs::SmallRng;
    use rand::SeedableRng;

    fn rand_vec(rng: &mut SmallRng, p: u32, n: usize) -> Vec<u8> {
        (0..n).map(|_| rng.gen_range(0..p) as u8).collect()
    }

    #[test]
    fn empty_codomain() {
        let mut rng = SmallRng::seed_from_u64(0);
        let b = AlternatingMap::sample(Prime::THREE, 4, 0, &mut rng);
        assert_eq!(b.m(), 0);
        assert!(b.apply(&unit(4, 0), &unit(4, 1)).unwrap().is_empty());
        assert!(b.is_surjective());
    }

    #[test]
    fn symplectic_reads_its_coefficients() {
        let b = AlternatingMap::symplectic(Prime::TWO, 4).unwrap();
        assert_eq!(b.apply(&unit(4, 0), &unit(4, 1)).unwrap(), [1]);
        assert_eq!(b.apply(&unit(4, 2), &unit(4, 3)).unwrap(), [1]);
        assert_eq!(b.apply(&unit(4, 0), &unit(4, 2)).unwrap(), [0]);
        assert_eq!(b.image_span(&Subspace::full(Prime::TWO, 4)).unwrap().dim(), 1);
        assert!(AlternatingMap::symplectic(Prime::TWO, 3).is_err());
    }

    #[test]
    fn alternating_and_bilinear() {
        let mut rng = SmallRng::seed_from_u64(1);
        for &p in &[2u32, 3, 5] {
            let q = Prime::small(p).unwrap();
            for _ in 0..50 {
                let b = AlternatingMap::sample(q, 6, 3, &mut rng);
                let u = rand_vec(&mut rng, p, 6);
                let u2 = rand_vec(&mut rng, p, 6);
                let v = rand_vec(&mut rng, p, 6);
                assert!(b.apply(&u, &u).unwrap().iter().all(|&x| x == 0));
                let uv = b.apply(&u, &v).unwrap();
                let vu = b.apply(&v, &u).unwrap();
                assert!(uv.iter().zip(&vu).all(|(&a, &c)| q.add(a, c) == 0));
                let sum: Vec<u8> = u.iter().zip(&u2).map(|(&a, &c)| q.add(a, c)).collect();
                let lhs = b.apply(&sum, &v).unwrap();
                let rhs: Vec<u8> =
                    uv.iter().zip(b.apply(&u2, &v).unwrap()).map(|(&a, c)| q.add(a, c)).collect();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn packed_apply_agrees() {
        let mut rng = SmallRng::seed_from_u64(2);
        let b = AlternatingMap::sample(Prime::TWO, 8, 5, &mut rng);
        for _ in 0..100 {
            let u = rand_vec(&mut rng, 2, 8);
            let v = rand_vec(&mut rng, 2, 8);
            assert_eq!(b.apply_packed(pack64(&u), pack64(&v)), pack64(&b.apply(&u, &v).unwrap()));
        }
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let a = AlternatingMap::sample(Prime::TWO, 5, 2, &mut crate::seed::substream(42, 0));
        let b = AlternatingMap::sample(Prime::TWO, 5, 2, &mut crate::seed::substream(42, 0));
        assert_eq!(a, b);
    }

    #[test]
    fn image_span_of_lines_and_zero_map() {
        let p = Prime::small(5).unwrap();
        let mut rng = SmallRng::seed_from_u64(4);
        let b = AlternatingMap::sample(p, 5, 2, &mut rng);
        let line = Subspace::from_generators(p, 5, &[vec![1, 2, 3, 4, 0]]).unwrap();
        assert_eq!(b.image_span(&line).unwrap().dim(), 0);
        let z = AlternatingMap::zero(p, 5, 2);
        assert_eq!(z.image_span(&Subspace::full(p, 5)).unwrap().dim(), 0);
    }

    #[test]
    fn canonical_linear_map() {
        let p = Prime::THREE;
        let f = LinearPowerMap::canonical(p, 3, 1).unwrap();
        assert_eq!(f.apply(&unit(3, 0)).unwrap(), [1]);
        assert_eq!(f.kernel(), Subspace::from_generators(p, 3, &[unit(3, 1), unit(3, 2)]).unwrap());
        assert_eq!(f.rank(), 1);
        let g = LinearPowerMap::canonical(p, 5, 3).unwrap();
        assert_eq!(g.image_span(&Subspace::full(p, 5)).unwrap(), Subspace::full(p, 3));
        assert_eq!(g.image_span(&g.kernel()).unwrap().dim(), 0);
        assert!(LinearPowerMap::canonical(p, 2, 3).is_err());
        assert!(LinearPowerMap::canonical(Prime::TWO, 3, 1).is_err());
    }

    #[test]
    fn two_variable_quadratic() {
        // Q[1,1] = Q[1,2] = 1, Q[2,2] = 0
        let coeff = FpMatrix::from_rows(Prime::TWO, 3, &[[1i64, 1, 0]]).unwrap();
        let f = QuadraticMap::new(2, coeff).unwrap();
        assert_eq!(f.apply(&[1, 0]).unwrap(), [1]);
        assert_eq!(f.apply(&[0, 1]).unwrap(), [0]);
        assert_eq!(f.apply(&[1, 1]).unwrap(), [0]);
        assert_eq!(f.associated_b().apply(&[1, 0], &[0, 1]).unwrap(), [1]);
    }

    #[test]
    fn polarization_identity() {
        let mut rng = SmallRng::seed_from_u64(5);
        for _ in 0..50 {
            let f = QuadraticMap::sample(7, 4, &mut rng);
            let b = f.associated_b();
            let x = rand_vec(&mut rng, 2, 7);
            let y = rand_vec(&mut rng, 2, 7);
            let xy: Vec<u8> = x.iter().zip(&y).map(|(a, c)| a ^ c).collect();
            let lhs: Vec<u8> = f
                .apply(&xy)
                .unwrap()
                .iter()
                .zip(f.apply(&x).unwrap())
                .zip(f.apply(&y).unwrap())
                .map(|((a, c), d)| a ^ c ^ d)
                .collect();
            assert_eq!(lhs, b.apply(&x, &y).unwrap());
        }
        let z = QuadraticMap::zero(5, 3);
        assert!(z.associated_b().coeff().is_zero());
        assert_eq!(z.image_span(&Subspace::full(Prime::TWO, 5)).unwrap().dim(), 0);
    }

    #[test]
    fn lift_recovers_polar_form() {
        let mut rng = SmallRng::seed_from_u64(6);
        let b = AlternatingMap::sample(Prime::TWO, 6, 3, &mut rng);
        let f = QuadraticMap::lift_of(&b).unwrap();
        assert_eq!(f.associated_b(), b);
        for i in 0..6 {
            assert!(f.apply(&unit(6, i)).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn quadratic_span_rule_matches_element_enumeration() {
        let mut rng = SmallRng::seed_from_u64(8);
        for _ in 0..100 {
            let n = rng.gen_range(2..8);
            let m = rng.gen_range(1..5);
            let f = QuadraticMap::sample(n, m, &mut rng);
            let d = rng.gen_range(0..n.min(6) + 1);
            let gens: Vec<Vec<u8>> = (0..d).map(|_| rand_vec(&mut rng, 2, n)).collect();
            let h = Subspace::from_generators(Prime::TWO, n, &gens).unwrap();
            let images: Vec<Vec<u8>> = h.elements().map(|x| f.apply(&x).unwrap()).collect();
            let brute = Subspace::from_generators(Prime::TWO, m, &images).unwrap();
            assert_eq!(f.image_span(&h).unwrap(), brute);
            let bh = f.associated_b().image_span(&h).unwrap();
            assert!(bh.is_subspace_of(&brute).unwrap());
        }
    }

    #[test]
    fn precompose_matches_pointwise() {
        let mut rng = SmallRng::seed_from_u64(9);
        let p = Prime::THREE;
        let b = AlternatingMap::sample(p, 4, 2, &mut rng);
        let mut g = FpMatrix::zeros(p, 4, 4);
        for (r, c) in [(0, 2), (1, 0), (2, 3), (3, 1)] {
            g.set(r, c, 1);
        }
        g.set(0, 1, 2);
        let bg = b.precompose(&g).unwrap();
        for _ in 0..20 {
            let u = rand_vec(&mut rng, 3, 4);
            let v = rand_vec(&mut rng, 3, 4);
            let gu = g.mul_vec(&u).unwrap();
            let gv = g.mul_vec(&v).unwrap();
            assert_eq!(bg.apply(&u, &v).unwrap(), b.apply(&gu, &gv).unwrap());
        }
    }
}
