//! Enumeration of all `d`-dimensional subspaces of `F_p^n`.
//!
//! Order: pivot-column sets in lexicographic order; within a pivot set, the
//! free RREF entries run as an odometer over row-major positions with the
//! last position fastest. Every subspace appears exactly once.

use alloc::vec;
use alloc::vec::Vec;

use crate::combinat::gaussian_binomial_u128;
use crate::field::Prime;
use crate::matrix::FpMatrix;
use crate::subspace::Subspace;
use crate::{Error, Result};

/// Lexicographically ordered `d`-subsets of `0..n`.
#[derive(Debug, Clone)]
pub struct PivotSets {
    n: usize,
    current: Option<Vec<usize>>,
}

pub fn pivot_sets(n: usize, d: usize) -> PivotSets {
    PivotSets { n, current: if d <= n { Some((0..d).collect()) } else { None } }
}

impl Iterator for PivotSets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let d = cur.len();
        let mut nxt = cur.clone();
        let mut i = d;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if nxt[i] < self.n - d + i {
                nxt[i] += 1;
                for j in i + 1..d {
                    nxt[j] = nxt[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if advanced {
            self.current = Some(nxt);
        }
        Some(cur)
    }
}

/// In-place cursor over subspaces; avoids allocating per subspace.
#[derive(Debug, Clone)]
pub struct GrassmannCursor {
    p: Prime,
    n: usize,
    d: usize,
    pivots: PivotSets,
    current_pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    digits: Vec<u8>,
    basis: FpMatrix,
    packed: Option<Vec<u64>>,
    single_cell: bool,
    valid: bool,
}

impl GrassmannCursor {
    /// Cursor over every `d`-dimensional subspace; positioned on the first.
    pub fn new(p: Prime, n: usize, d: usize) -> GrassmannCursor {
        let mut pivots = pivot_sets(n, d);
        let first = pivots.next();
        let mut c = GrassmannCursor::blank(p, n, d, pivots, false);
        match first {
            Some(ps) => c.load_cell(ps),
            None => c.valid = false,
        }
        c
    }

    /// Cursor over the subspaces whose RREF has exactly the pivot set
    /// `pivots`, for partitioned scans.
    pub fn for_pivots(p: Prime, n: usize, pivots: &[usize]) -> GrassmannCursor {
        let d = pivots.len();
        debug_assert!(pivots.windows(2).all(|w| w[0] < w[1]) && pivots.iter().all(|&c| c < n));
        let mut c = GrassmannCursor::blank(p, n, d, PivotSets { n, current: None }, true);
        c.load_cell(pivots.to_vec());
        c
    }

    fn blank(p: Prime, n: usize, d: usize, pivots: PivotSets, single_cell: bool) -> GrassmannCursor {
        GrassmannCursor {
            p,
            n,
            d,
            pivots,
            current_pivots: Vec::new(),
            free: Vec::new(),
            digits: Vec::new(),
            basis: FpMatrix::zeros(p, d, n),
            packed: if p.is_two() && n <= 64 { Some(vec![0; d]) } else { None },
            single_cell,
            valid: true,
        }
    }

    fn load_cell(&mut self, pivots: Vec<usize>) {
        self.free.clear();
        for (r, &c) in pivots.iter().enumerate() {
            for col in c + 1..self.n {
                if !pivots.contains(&col) {
                    self.free.push((r, col));
                }
            }
        }
        self.digits = vec![0; self.free.len()];
        self.basis = FpMatrix::zeros(self.p, self.d, self.n);
        for (r, &c) in pivots.iter().enumerate() {
            self.basis.set(r, c, 1);
        }
        if let Some(packed) = &mut self.packed {
            for (r, &c) in pivots.iter().enumerate() {
                packed[r] = 1 << c;
            }
        }
        self.current_pivots = pivots;
        self.valid = true;
    }

    #[inline]
    pub fn is_valid(&self) -> bool {
        self.valid
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Current RREF basis (`d x n`).
    #[inline]
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    /// Current basis rows packed into words (`F_2`, `n <= 64`).
    #[inline]
    pub fn packed(&self) -> Option<&[u64]> {
        self.packed.as_deref()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.current_pivots
    }

    pub fn subspace(&self) -> Subspace {
        Subspace::from_rref_unchecked(self.basis.clone(), self.current_pivots.clone())
    }

    /// Moves to the next subspace; returns false once exhausted.
    pub fn advance(&mut self) -> bool {
        if !self.valid {
            return false;
        }
        let p = self.p.get() as u8;
        let mut i = self.free.len();
        while i > 0 {
            i -= 1;
            let (r, c) = self.free[i];
            let nd = self.digits[i] + 1;
            if nd < p {
                self.digits[i] = nd;
                self.basis.set(r, c, nd);
                if let Some(packed) = &mut self.packed {
                    packed[r] |= 1 << c;
                }
                return true;
            }
            self.digits[i] = 0;
            self.basis.set(r, c, 0);
            if let Some(packed) = &mut self.packed {
                packed[r] &= !(1 << c);
            }
        }
        if self.single_cell {
            self.valid = false;
            return false;
        }
        match self.pivots.next() {
            Some(ps) => {
                self.load_cell(ps);
                true
            }
            None => {
                self.valid = false;
                false
            }
        }
    }
}

/// Streaming iterator of canonical subspaces.
#[derive(Debug, Clone)]
pub struct Subspaces {
    cursor: GrassmannCursor,
    started: bool,
}

impl Iterator for Subspaces {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.started {
            self.cursor.advance();
        }
        self.started = true;
        self.cursor.is_valid().then(|| self.cursor.subspace())
    }
}

/// Checks a request of `estimate` subspaces against `guard`.
pub fn check_guard(estimate: u128, guard: u128) -> Result<()> {
    if estimate > guard {
        Err(Error::GuardExceeded { estimate, guard })
    } else {
        Ok(())
    }
}

/// Every `d`-dimensional subspace of `F_p^n`, refusing requests larger
/// than `guard`.
pub fn enumerate_subspaces(p: Prime, n: usize, d: usize, guard: u128) -> Result<Subspaces> {
    if d > n {
        return Err(Error::InvalidParams(alloc::format!("subspace dimension {d} exceeds {n}")));
    }
    check_guard(gaussian_binomial_u128(n, d, p.get()), guard)?;
    Ok(Subspaces { cursor: GrassmannCursor::new(p, n, d), started: false })
}
