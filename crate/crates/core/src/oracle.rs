//! Ground-truth equivalence by exhaustive search over relabelings and signs.
//!
//! Orthogonal maps are handled analytically: for spanning frames,
//! `G = U F` for some orthogonal `U` iff `F^T F = G^T G`. What remains is a
//! search over the `k! 2^k` relabelings and sign patterns, which is only
//! feasible for small `k`.

use nalgebra::DMatrix;

use crate::error::{FrameError, Result};
use crate::frame::{check_same_shape, gram, Frame, GramMatrix};
use crate::transforms::EquivalenceTransform;
use crate::verdict::{Certificate, Decision, Verdict};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Largest frame size accepted.
    pub max_count: usize,
    /// Absolute tolerance on Gram entries.
    pub tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_count: 8,
            tol: crate::DEFAULT_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleOutcome {
    pub equivalent: bool,
    pub witness: Option<EquivalenceTransform>,
}

/// Whether the Gram matrices agree entrywise within `tol`, i.e. whether
/// `g` is an orthogonal image of `f` vector by vector.
pub fn gram_equal(f: &Frame, g: &Frame, tol: f64) -> Result<bool> {
    check_same_shape(f, g)?;
    Ok(gram(f).max_abs_diff(&gram(g)) <= tol)
}

fn check_inputs(f: &Frame, g: &Frame, cfg: &OracleConfig) -> Result<()> {
    check_same_shape(f, g)?;
    if cfg.max_count == 0 {
        return Err(FrameError::InvalidParameter("max_count must be at least 1".into()));
    }
    if f.count() > cfg.max_count {
        return Err(FrameError::TooLarge {
            count: f.count(),
            max: cfg.max_count,
        });
    }
    Ok(())
}

/// Orthogonal `U` minimizing `|U source - target|_F`, from the SVD of the
/// cross-covariance `target source^T`.
pub fn procrustes_rotation(source: &DMatrix<f64>, target: &DMatrix<f64>) -> DMatrix<f64> {
    let svd = (target * source.transpose()).svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^T");
    u * v_t
}

/// Searches for `(pi, eps)` with `<g_i, g_j> = eps_i eps_j <f_pi(i), f_pi(j)>`.
///
/// Candidates are pruned when the sorted absolute Gram rows of `g_i` and
/// `f_pi(i)` differ and whenever a partial assignment already contradicts
/// a Gram entry. Permutations are visited in lexicographic order and `+1`
/// before `-1`, so the returned witness is the first one in that order.
pub fn oracle_equivalent(f: &Frame, g: &Frame, cfg: &OracleConfig) -> Result<OracleOutcome> {
    check_inputs(f, g, cfg)?;
    let gf = gram(f);
    let gg = gram(g);
    let mut search = Search::new(f, g, &gf, &gg, cfg.tol);
    let witness = search.run();
    Ok(OracleOutcome {
        equivalent: witness.is_some(),
        witness,
    })
}

pub fn oracle_verdict(f: &Frame, g: &Frame, cfg: &OracleConfig) -> Result<Verdict> {
    let outcome = oracle_equivalent(f, g, cfg)?;
    Ok(match outcome.witness {
        Some(w) => Verdict::new(Decision::Equivalent, Certificate::OracleWitness).with_witness(w),
        None => Verdict::new(Decision::NotEquivalent, Certificate::OracleExhaustive)
            .with_note(format!("no match among {}! x 2^{} relabelings and signs", f.count(), f.count())),
    })
}

/// Visits every permutation and sign pattern without pruning and compares
/// full Gram matrices. Exponentially slower than [`oracle_equivalent`]; it
/// exists to cross-check the pruned search.
pub fn oracle_equivalent_unpruned(f: &Frame, g: &Frame, cfg: &OracleConfig) -> Result<bool> {
    check_inputs(f, g, cfg)?;
    let k = f.count();
    let gf = gram(f);
    let gg = gram(g);
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        for mask in 0u32..(1 << k) {
            let sign = |i: usize| if mask >> i & 1 == 1 { -1.0 } else { 1.0 };
            let mut ok = true;
            'rows: for i in 0..k {
                for j in 0..k {
                    let expected = sign(i) * sign(j) * gf.get(perm[i], perm[j]);
                    if (gg.get(i, j) - expected).abs() > cfg.tol {
                        ok = false;
                        break 'rows;
                    }
                }
            }
            if ok {
                return Ok(true);
            }
        }
        if !next_permutation(&mut perm) {
            return Ok(false);
        }
    }
}

/// Advances to the next permutation in lexicographic order.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("p[i + 1] > p[i]");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

fn abs_row_profile(gram: &GramMatrix, i: usize) -> Vec<f64> {
    let mut row: Vec<f64> = (0..gram.size())
        .filter(|&j| j != i)
        .map(|j| gram.get(i, j).abs())
        .collect();
    row.sort_unstable_by(f64::total_cmp);
    row
}

struct Search<'a> {
    f: &'a Frame,
    g: &'a Frame,
    gf: &'a GramMatrix,
    gg: &'a GramMatrix,
    tol: f64,
    /// `compatible[i][a]`: row profile of `g_i` matches that of `f_a`.
    compatible: Vec<Vec<bool>>,
    perm: Vec<usize>,
    signs: Vec<i8>,
    used: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(f: &'a Frame, g: &'a Frame, gf: &'a GramMatrix, gg: &'a GramMatrix, tol: f64) -> Self {
        let k = f.count();
        let pf: Vec<Vec<f64>> = (0..k).map(|a| abs_row_profile(gf, a)).collect();
        let pg: Vec<Vec<f64>> = (0..k).map(|i| abs_row_profile(gg, i)).collect();
        let compatible = pg
            .iter()
            .map(|rg| {
                pf.iter()
                    .map(|rf| rf.iter().zip(rg).all(|(a, b)| (a - b).abs() <= tol))
                    .collect()
            })
            .collect();
        Search {
            f,
            g,
            gf,
            gg,
            tol,
            compatible,
            perm: Vec::with_capacity(k),
            signs: Vec::with_capacity(k),
            used: vec![false; k],
        }
    }

    fn run(&mut self) -> Option<EquivalenceTransform> {
        let k = self.f.count();
        let i = self.perm.len();
        if i == k {
            return self.witness();
        }
        for a in 0..k {
            if self.used[a] || !self.compatible[i][a] {
                continue;
            }
            if (self.gg.get(i, i) - self.gf.get(a, a)).abs() > self.tol {
                continue;
            }
            for sign in [1i8, -1] {
                if !self.consistent(i, a, f64::from(sign)) {
                    continue;
                }
                self.used[a] = true;
                self.perm.push(a);
                self.signs.push(sign);
                if let Some(w) = self.run() {
                    return Some(w);
                }
                self.perm.pop();
                self.signs.pop();
                self.used[a] = false;
            }
        }
        None
    }

    fn consistent(&self, i: usize, a: usize, sign: f64) -> bool {
        self.perm.iter().zip(&self.signs).enumerate().all(|(j, (&b, &s))| {
            let expected = sign * f64::from(s) * self.gf.get(a, b);
            (self.gg.get(i, j) - expected).abs() <= self.tol
        })
    }

    /// Recovers `U` for the completed assignment and checks it.
    fn witness(&self) -> Option<EquivalenceTransform> {
        let n = self.f.dim();
        let k = self.f.count();
        let mut relabeled = DMatrix::zeros(n, k);
        for (i, (&a, &s)) in self.perm.iter().zip(&self.signs).enumerate() {
            let col = self.f.column(a);
            for r in 0..n {
                relabeled[(r, i)] = f64::from(s) * col[r];
            }
        }
        let u = procrustes_rotation(&relabeled, self.g.matrix());
        let t = EquivalenceTransform::new(u, self.perm.clone(), self.signs.clone()).ok()?;
        let image = t.apply(self.f).ok()?;
        (image.max_abs_diff(self.g).ok()? <= 10.0 * self.tol).then_some(t)
    }
}
