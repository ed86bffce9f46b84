//! Streaming moments and goodness-of-fit helpers.

use serde::{Deserialize, Serialize};

/// Count, mean and centered sum of squares of a stream, mergeable by the
/// pairwise update of Chan, Golub and LeVeque.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Moments {
    pub count: u64,
    pub mean: f64,
    pub m2: f64,
}

impl Moments {
    #[inline]
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&self, other: &Moments) -> Moments {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return *self;
        }
        let n = self.count + other.count;
        let (na, nb) = (self.count as f64, other.count as f64);
        let delta = other.mean - self.mean;
        Moments {
            count: n,
            mean: self.mean + delta * nb / n as f64,
            m2: self.m2 + other.m2 + delta * delta * na * nb / n as f64,
        }
    }

    /// Unbiased sample variance; zero for fewer than two samples.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    /// Standard error of the mean.
    pub fn stderr(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

/// Fixed-width bank of [`Moments`].
#[derive(Debug, Clone, PartialEq)]
pub struct MomentBank<const N: usize> {
    pub slots: [Moments; N],
}

impl<const N: usize> Default for MomentBank<N> {
    fn default() -> Self {
        MomentBank {
            slots: [Moments::default(); N],
        }
    }
}

impl<const N: usize> MomentBank<N> {
    #[inline]
    pub fn push(&mut self, xs: &[f64; N]) {
        for (m, &x) in self.slots.iter_mut().zip(xs) {
            m.push(x);
        }
    }

    pub fn merge(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, o) in out.slots.iter_mut().zip(&other.slots) {
            *m = m.merge(o);
        }
        out
    }
}

/// Reduces `parts` by a balanced binary tree in index order. The result
/// depends only on the sequence, never on how it was produced.
pub fn tree_reduce<T: Clone, F: Fn(&T, &T) -> T>(parts: &[T], merge: &F) -> Option<T> {
    match parts.len() {
        0 => None,
        1 => Some(parts[0].clone()),
        n => {
            let (l, r) = parts.split_at(n / 2);
            let l = tree_reduce(l, merge)?;
            let r = tree_reduce(r, merge)?;
            Some(merge(&l, &r))
        }
    }
}

/// Two-sided Kolmogorov-Smirnov distance between the sample and `cdf`.
/// `sorted` must be ascending.
pub fn ks_statistic<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> f64 {
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let x = sorted[i];
        let mut j = i;
        while j < sorted.len() && sorted[j] == x {
            j += 1;
        }
        let f = cdf(x);
        d = d.max((j as f64 / n - f).abs()).max((f - i as f64 / n).abs());
        i = j;
    }
    d
}

/// Empirical CDF of `sorted` at each grid point.
pub fn ecdf_at(sorted: &[f64], grid: &[f64]) -> Vec<(f64, f64)> {
    let n = sorted.len().max(1) as f64;
    grid.iter()
        .map(|&x| (x, sorted.partition_point(|&v| v <= x) as f64 / n))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn moments_match_two_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 * 0.3).collect();
        let mut m = Moments::default();
        xs.iter().for_each(|&x| m.push(x));
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
        assert_relative_eq!(m.mean, mean, max_relative = 1e-13);
        assert_relative_eq!(m.variance(), var, max_relative = 1e-12);
    }

    #[test]
    fn merge_equals_single_stream() {
        let xs: Vec<f64> = (0..999).map(|i| (i as f64).sin()).collect();
        let mut whole = Moments::default();
        xs.iter().for_each(|&x| whole.push(x));
        let parts: Vec<Moments> = xs
            .chunks(100)
            .map(|c| {
                let mut m = Moments::default();
                c.iter().for_each(|&x| m.push(x));
                m
            })
            .collect();
        let merged = tree_reduce(&parts, &|a: &Moments, b: &Moments| a.merge(b)).unwrap();
        assert_eq!(merged.count, whole.count);
        assert_relative_eq!(merged.mean, whole.mean, max_relative = 1e-12, epsilon = 1e-15);
        assert_relative_eq!(merged.m2, whole.m2, max_relative = 1e-12);
    }

    #[test]
    fn ks_of_exact_quantiles_is_small() {
        let n = 1000;
        let sorted: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let d = ks_statistic(&sorted, |x| x.clamp(0.0, 1.0));
        assert_relative_eq!(d, 0.5 / n as f64, max_relative = 1e-9);
    }

    #[test]
    fn ecdf_is_monotone_and_reaches_one() {
        let sorted = [0.1, 0.2, 0.2, 0.5];
        let e = ecdf_at(&sorted, &[0.0, 0.2, 0.3, 1e9]);
        assert_eq!(e.iter().map(|p| p.1).collect::<Vec<_>>(), vec![0.0, 0.75, 0.75, 1.0]);
    }
}
