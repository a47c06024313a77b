//! Exact integer solving of F·x = b by column-style Hermite elimination.

use super::chip::{ChipGraph, Config, LevelMap};
use crate::error::Result;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Column echelon form H = A·U of an integer matrix A, with U unimodular.
#[derive(Debug, Clone)]
pub struct LatticeSolver {
    rows: usize,
    /// Columns of H.
    h: Vec<Vec<BigInt>>,
    /// Columns of U.
    u: Vec<Vec<BigInt>>,
    /// (row, column) of each pivot, rows increasing.
    pivots: Vec<(usize, usize)>,
}

impl LatticeSolver {
    pub fn new(a: &[Vec<i64>]) -> LatticeSolver {
        let rows = a.len();
        let cols = a.first().map_or(0, |r| r.len());
        let mut h: Vec<Vec<BigInt>> = (0..cols).map(|c| (0..rows).map(|r| BigInt::from(a[r][c])).collect()).collect();
        let mut u: Vec<Vec<BigInt>> = (0..cols)
            .map(|c| (0..cols).map(|r| BigInt::from((r == c) as i64)).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut pc = 0;
        for r in 0..rows {
            if pc == cols {
                break;
            }
            loop {
                let best = (pc..cols).filter(|&c| !h[c][r].is_zero()).min_by_key(|&c| h[c][r].abs());
                let Some(best) = best else { break };
                h.swap(pc, best);
                u.swap(pc, best);
                let mut done = true;
                for c in pc + 1..cols {
                    if h[c][r].is_zero() {
                        continue;
                    }
                    let q = h[c][r].div_floor(&h[pc][r]);
                    let (hp, hc) = pair(&mut h, pc, c);
                    axpy(hc, &q, hp);
                    let (up, uc) = pair(&mut u, pc, c);
                    axpy(uc, &q, up);
                    if !h[c][r].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if !h[pc][r].is_zero() {
                if h[pc][r].is_negative() {
                    h[pc].iter_mut().for_each(|x| *x = -&*x);
                    u[pc].iter_mut().for_each(|x| *x = -&*x);
                }
                pivots.push((r, pc));
                pc += 1;
            }
        }
        LatticeSolver { rows, h, u, pivots }
    }

    /// Some integer x with A·x = b, if one exists.
    pub fn solve(&self, b: &[i64]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows);
        let cols = self.h.len();
        let mut y = vec![BigInt::zero(); cols];
        for &(r, c) in &self.pivots {
            let mut s = BigInt::from(b[r]);
            for c2 in 0..c {
                if !y[c2].is_zero() {
                    s -= &self.h[c2][r] * &y[c2];
                }
            }
            let (q, rem) = s.div_rem(&self.h[c][r]);
            if !rem.is_zero() {
                return None;
            }
            y[c] = q;
        }
        for r in 0..self.rows {
            let mut s = BigInt::zero();
            for c in 0..cols {
                if !y[c].is_zero() {
                    s += &self.h[c][r] * &y[c];
                }
            }
            if s != BigInt::from(b[r]) {
                return None;
            }
        }
        let mut x = vec![BigInt::zero(); cols];
        for c in 0..cols {
            if y[c].is_zero() {
                continue;
            }
            for (xi, ui) in x.iter_mut().zip(&self.u[c]) {
                *xi += ui * &y[c];
            }
        }
        Some(x)
    }
}

fn pair<T>(v: &mut [T], a: usize, b: usize) -> (&T, &mut T) {
    debug_assert!(a < b);
    let (lo, hi) = v.split_at_mut(b);
    (&lo[a], &mut hi[0])
}

/// y ← y − q·x
fn axpy(y: &mut [BigInt], q: &BigInt, x: &[BigInt]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi -= q * xi;
        }
    }
}

fn normalized(x: Vec<BigInt>) -> LevelMap {
    let min = x.iter().min().cloned().unwrap_or_default();
    x.into_iter().map(|v| (v - &min).to_i64().expect("level value fits in i64")).collect()
}

impl ChipGraph {
    pub fn solver(&self) -> LatticeSolver {
        LatticeSolver::new(&self.firing_matrix())
    }
}

/// A level map f with div(f) = D, normalized to minimum 0, if D is principal.
pub fn is_principal(g: &ChipGraph, d: &[i64]) -> Result<Option<LevelMap>> {
    g.require_connected()?;
    Ok(g.solver().solve(d).map(normalized))
}

/// f with D2 = D1 + div(f), if the two are linearly equivalent.
pub fn linear_equivalence_witness(g: &ChipGraph, d1: &[i64], d2: &[i64]) -> Result<Option<LevelMap>> {
    let diff: Config = d2.iter().zip(d1).map(|(a, b)| a - b).collect();
    is_principal(g, &diff)
}

impl LatticeSolver {
    /// Normalized level map solving F·f = b.
    pub fn level_map(&self, b: &[i64]) -> Option<LevelMap> {
        self.solve(b).map(normalized)
    }
}
