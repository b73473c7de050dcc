//! Aggregated cohomology dimensions over a box of Fourier modes.
//!
//! Modes with max-norm `≤ N` are grouped into orbits of the signed
//! permutations fixing φ together with `k ↦ −k`; per-mode dimensions are
//! constant on orbits, so one snapshot per orbit suffices. Each `±k` pair is
//! counted once (the zero mode once), in complex dimensions.

use super::cohomology::{mode_cohomology, ComplexSnapshot, DegreeDims};
use super::table::{max_norm, Mode};
use crate::g2_linear::standard_g2;
use rayon::prelude::*;
use serde::Serialize;
use std::sync::OnceLock;

/// `e_i ↦ sign_i e_{perm_i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedPerm {
    pub perm: [usize; 7],
    pub sign: [i64; 7],
}

impl SignedPerm {
    pub fn act(&self, k: &Mode) -> Mode {
        let mut out = [0; 7];
        for i in 0..7 {
            out[self.perm[i]] = self.sign[i] * k[i];
        }
        out
    }

    /// Image of `e_I` as `(sign, mask)`.
    fn act_mask(&self, mask: u8) -> (i64, u8) {
        let mut s = 1;
        let mut img = 0u8;
        let mut seq = Vec::with_capacity(7);
        for i in 0..7 {
            if mask >> i & 1 == 1 {
                s *= self.sign[i];
                seq.push(self.perm[i]);
                img |= 1 << self.perm[i];
            }
        }
        for a in 0..seq.len() {
            for b in a + 1..seq.len() {
                if seq[a] > seq[b] {
                    s = -s;
                }
            }
        }
        (s, img)
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else { return false };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("successor exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Signed permutation matrices preserving φ.
pub fn symmetry_group() -> &'static [SignedPerm] {
    static G: OnceLock<Vec<SignedPerm>> = OnceLock::new();
    G.get_or_init(|| {
        let phi = &standard_g2().phi;
        let terms: Vec<(u8, i64)> = phi
            .terms()
            .into_iter()
            .map(|(m, c)| (m.0, if *c > crate::scalar::qi(0) { 1 } else { -1 }))
            .collect();
        let coeff = |m: u8| terms.iter().find(|t| t.0 == m).map(|t| t.1);
        let mut out = Vec::new();
        let mut perm = [0, 1, 2, 3, 4, 5, 6];
        loop {
            for bits in 0u32..128 {
                let sign = std::array::from_fn(|i| if bits >> i & 1 == 1 { -1 } else { 1 });
                let g = SignedPerm { perm, sign };
                if terms.iter().all(|&(m, c)| {
                    let (s, img) = g.act_mask(m);
                    coeff(img) == Some(s * c)
                }) {
                    out.push(g);
                }
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        out
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ModeOrbit {
    pub representative: Mode,
    pub size: usize,
    pub max_norm: i64,
}

impl ModeOrbit {
    /// Number of `±k` pairs in the orbit.
    pub fn pairs(&self) -> usize {
        if self.max_norm == 0 {
            1
        } else {
            self.size / 2
        }
    }
}

/// Orbits of `{k : |k|_∞ ≤ n}` under the symmetry group and `k ↦ −k`,
/// in order of their lexicographically smallest element.
pub fn mode_orbits(n: i64) -> Vec<ModeOrbit> {
    assert!(n >= 0);
    let side = (2 * n + 1) as usize;
    let total = side.pow(7);
    let index = |k: &Mode| k.iter().fold(0usize, |acc, &x| acc * side + (x + n) as usize);
    let decode = |mut i: usize| {
        let mut k = [0i64; 7];
        for p in (0..7).rev() {
            k[p] = (i % side) as i64 - n;
            i /= side;
        }
        k
    };
    let group = symmetry_group();
    let mut seen = vec![false; total];
    let mut out = Vec::new();
    for i in 0..total {
        if seen[i] {
            continue;
        }
        let k = decode(i);
        let mut size = 0;
        for g in group {
            let img = g.act(&k);
            for m in [img, img.map(|x| -x)] {
                let j = index(&m);
                if !seen[j] {
                    seen[j] = true;
                    size += 1;
                }
            }
        }
        out.push(ModeOrbit { representative: k, size, max_norm: max_norm(&k) });
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct TruncatedCohomology {
    pub truncation: i64,
    /// Number of `±k` pairs counted.
    pub mode_pairs: usize,
    pub orbits: usize,
    pub totals: Vec<DegreeDims>,
}

impl TruncatedCohomology {
    pub fn h_phi(&self) -> Vec<usize> {
        self.totals.iter().map(|d| d.h_phi).collect()
    }

    pub fn h_psi(&self) -> Vec<usize> {
        self.totals.iter().map(|d| d.h_psi).collect()
    }

    pub fn de_rham(&self) -> Vec<usize> {
        self.totals.iter().map(|d| d.de_rham).collect()
    }
}

/// Runs `f` on a pool capped by `G2CALC_THREADS` when that is set.
pub fn with_thread_cap<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    match std::env::var("G2CALC_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0) {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool").install(f),
        None => f(),
    }
}

/// Truncated totals for every `N = 1..=n_max` from a single pass over the largest box.
pub fn truncation_series(n_max: i64) -> Vec<TruncatedCohomology> {
    assert!(n_max >= 1, "truncation must be at least 1");
    let orbits = mode_orbits(n_max);
    let snaps: Vec<ComplexSnapshot> = with_thread_cap(|| orbits.par_iter().map(|o| mode_cohomology(o.representative)).collect());
    (1..=n_max)
        .map(|n| {
            let mut totals = ComplexSnapshot::empty([0; 7]);
            let (mut pairs, mut count) = (0, 0);
            for (o, s) in orbits.iter().zip(&snaps) {
                if o.max_norm <= n {
                    totals.accumulate(s, o.pairs());
                    pairs += o.pairs();
                    count += 1;
                }
            }
            TruncatedCohomology { truncation: n, mode_pairs: pairs, orbits: count, totals: totals.degrees }
        })
        .collect()
}

pub fn truncated_cohomology(n: i64) -> TruncatedCohomology {
    truncation_series(n).pop().expect("non-empty series")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn group_order() {
        assert_eq!(symmetry_group().len(), 1344);
    }

    #[test]
    fn orbits_partition_the_box() {
        let o = mode_orbits(1);
        assert_eq!(o.iter().map(|x| x.size).sum::<usize>(), 3usize.pow(7));
        assert_eq!(o[0].representative, [-1; 7]);
        assert!(o.iter().any(|x| x.max_norm == 0 && x.size == 1));
    }

    #[test]
    fn dims_constant_on_orbits() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = symmetry_group();
        for _ in 0..3 {
            let k: Mode = std::array::from_fn(|_| rng.gen_range(-2..=2));
            let h = g[rng.gen_range(0..g.len())];
            let a = mode_cohomology(k);
            let b = mode_cohomology(h.act(&k));
            let c = mode_cohomology(k.map(|x| -x));
            assert_eq!(a.degrees, b.degrees, "{k:?}");
            assert_eq!(a.degrees, c.degrees, "{k:?}");
        }
    }
}
