//! Erdős–Rényi G(n, m) graphs matched to a network's node and link counts.
//!
//! Sample `i` of a spec draws from ChaCha8 seeded with `seed` on stream `i`,
//! so every sample is reproducible on its own and samples are independent.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{LexnetError, Result};
use crate::graph::{Directedness, LexNetwork, NodeId};
use crate::metrics::{compute_metrics, MetricsRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErSpec {
    pub n: usize,
    pub k: usize,
    pub directedness: Directedness,
    pub seed: u64,
    pub samples: usize,
}

impl ErSpec {
    pub fn new(n: usize, k: usize, directedness: Directedness, seed: u64) -> Self {
        ErSpec {
            n,
            k,
            directedness,
            seed,
            samples: 1,
        }
    }

    /// Spec matching the node and link counts of `g`.
    pub fn matching(g: &LexNetwork, seed: u64) -> Self {
        ErSpec::new(g.n(), g.k(), g.directedness(), seed)
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    /// Number of distinct non-self pairs available.
    pub fn max_links(&self) -> usize {
        let all = self.n.saturating_mul(self.n.saturating_sub(1));
        if self.directedness.is_directed() {
            all
        } else {
            all / 2
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(LexnetError::InvalidErSpec("at least one node is required".into()));
        }
        if self.n > u32::MAX as usize {
            return Err(LexnetError::InvalidErSpec(format!(
                "{} nodes exceed the id space",
                self.n
            )));
        }
        if self.samples == 0 {
            return Err(LexnetError::InvalidErSpec("at least one sample is required".into()));
        }
        let max = self.max_links();
        if self.k > max {
            return Err(LexnetError::TooManyLinks {
                n: self.n,
                k: self.k,
                max,
            });
        }
        Ok(())
    }

    fn rng(&self, sample: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(sample as u64);
        rng
    }
}

/// Uniform random non-self pair; `(min, max)` for undirected graphs.
fn draw_pair(rng: &mut ChaCha8Rng, n: usize, directed: bool) -> (u32, u32) {
    let u = rng.random_range(0..n);
    let mut v = rng.random_range(0..n - 1);
    if v >= u {
        v += 1;
    }
    let (u, v) = (u as u32, v as u32);
    if directed {
        (u, v)
    } else {
        (u.min(v), u.max(v))
    }
}

fn pair_key((u, v): (u32, u32)) -> u64 {
    (u64::from(u) << 32) | u64::from(v)
}

/// One G(n, m) draw for sample index `sample`.
pub fn generate_er_sample(spec: &ErSpec, sample: usize) -> Result<LexNetwork> {
    spec.validate()?;
    let directed = spec.directedness.is_directed();
    let mut rng = spec.rng(sample);
    let mut g = LexNetwork::with_nodes(spec.directedness, spec.n);
    let max = spec.max_links();

    if spec.k.saturating_mul(2) <= max {
        // sparse: redraw on collision
        while g.k() < spec.k {
            let (u, v) = draw_pair(&mut rng, spec.n, directed);
            g.add_link(NodeId(u), NodeId(v))?;
        }
    } else {
        // dense: draw the pairs to leave out, then add everything else
        let mut excluded = HashSet::with_capacity(max - spec.k);
        while excluded.len() < max - spec.k {
            excluded.insert(pair_key(draw_pair(&mut rng, spec.n, directed)));
        }
        for u in 0..spec.n as u32 {
            let start = if directed { 0 } else { u + 1 };
            for v in start..spec.n as u32 {
                if u != v && !excluded.contains(&pair_key((u, v))) {
                    g.add_link(NodeId(u), NodeId(v))?;
                }
            }
        }
    }
    debug_assert_eq!(g.k(), spec.k);
    Ok(g)
}

/// All `spec.samples` draws.
pub fn generate_er(spec: &ErSpec) -> Result<Vec<LexNetwork>> {
    spec.validate()?;
    (0..spec.samples).map(|i| generate_er_sample(spec, i)).collect()
}

pub fn er_sample_metrics(spec: &ErSpec) -> Result<Vec<MetricsRecord>> {
    spec.validate()?;
    (0..spec.samples)
        .map(|i| generate_er_sample(spec, i).map(|g| compute_metrics(&g)))
        .collect()
}

/// Per-measure mean over `spec.samples` draws.
///
/// `l` and `l_literal` average the samples where they are defined. Integer
/// fields (`d`, `reachable_pairs`, component counts) are rounded means, so a
/// single sample reproduces its own record exactly.
pub fn er_reference_metrics(spec: &ErSpec) -> Result<MetricsRecord> {
    let records = er_sample_metrics(spec)?;
    Ok(mean_record(&records))
}

pub(crate) fn mean_record(records: &[MetricsRecord]) -> MetricsRecord {
    let first = &records[0];
    let count = records.len() as f64;
    let mean_opt = |f: &dyn Fn(&MetricsRecord) -> Option<f64>| {
        let vals: Vec<f64> = records.iter().filter_map(f).collect();
        (!vals.is_empty()).then(|| vals.iter().sum::<f64>() / vals.len() as f64)
    };
    let mean_int = |f: &dyn Fn(&MetricsRecord) -> f64| (records.iter().map(f).sum::<f64>() / count).round();

    MetricsRecord {
        directedness: first.directedness,
        n: first.n,
        k: first.k,
        avg_degree: first.avg_degree,
        avg_total_degree: first.avg_total_degree,
        c: records.iter().map(|r| r.c).sum::<f64>() / count,
        l: mean_opt(&|r| r.l),
        l_literal: mean_opt(&|r| r.l_literal),
        d: mean_opt(&|r| r.d.map(f64::from)).map(|d| d.round() as u32),
        reachable_pairs: mean_int(&|r| r.reachable_pairs as f64) as u64,
        component_count: mean_int(&|r| r.component_count as f64) as usize,
        largest_component_size: mean_int(&|r| r.largest_component_size as f64) as usize,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn link_set(g: &LexNetwork) -> BTreeSet<(NodeId, NodeId)> {
        g.links().iter().copied().collect()
    }

    #[test]
    fn forced_outcomes() {
        let tri = generate_er_sample(&ErSpec::new(3, 3, Directedness::Undirected, 1), 0).unwrap();
        assert_eq!(
            link_set(&tri),
            [(0, 1), (0, 2), (1, 2)]
                .iter()
                .map(|&(a, b)| (NodeId(a), NodeId(b)))
                .collect()
        );

        let pair = generate_er_sample(&ErSpec::new(2, 2, Directedness::Directed, 1), 0).unwrap();
        assert_eq!(
            link_set(&pair),
            [(0, 1), (1, 0)].iter().map(|&(a, b)| (NodeId(a), NodeId(b))).collect()
        );
    }

    #[test]
    fn too_many_links() {
        let err = generate_er(&ErSpec::new(3, 4, Directedness::Undirected, 0)).unwrap_err();
        assert!(matches!(err, LexnetError::TooManyLinks { max: 3, .. }));
        assert!(generate_er(&ErSpec::new(3, 6, Directedness::Directed, 0)).is_ok());
        assert!(generate_er(&ErSpec::new(0, 0, Directedness::Directed, 0)).is_err());
        assert!(generate_er(&ErSpec::new(3, 1, Directedness::Directed, 0).with_samples(0)).is_err());
    }

    #[test]
    fn exact_counts_and_determinism() {
        for dir in [Directedness::Directed, Directedness::Undirected] {
            for (n, k) in [(1, 0), (10, 0), (10, 20), (10, 40), (10, 44), (50, 100)] {
                let spec = ErSpec::new(n, k, dir, 99).with_samples(3);
                let graphs = generate_er(&spec).unwrap();
                for g in &graphs {
                    assert_eq!((g.n(), g.k()), (n, k));
                    assert!(g.links().iter().all(|(a, b)| a != b));
                }
                let again = generate_er(&spec).unwrap();
                for (a, b) in graphs.iter().zip(&again) {
                    assert_eq!(a.links(), b.links());
                }
            }
        }
        let spec = ErSpec::new(50, 100, Directedness::Directed, 5).with_samples(2);
        let gs = generate_er(&spec).unwrap();
        assert_ne!(link_set(&gs[0]), link_set(&gs[1]));
        assert_eq!(
            er_reference_metrics(&spec).unwrap(),
            er_reference_metrics(&spec).unwrap()
        );
    }

    #[test]
    fn triangle_reference() {
        let r = er_reference_metrics(&ErSpec::new(3, 3, Directedness::Undirected, 3)).unwrap();
        assert_eq!((r.c, r.l, r.d), (1.0, Some(1.0), Some(1)));
        assert_eq!(r.l_literal, Some(2.0 / 3.0));
    }

    #[test]
    fn pair_frequency_is_uniform() {
        // every unordered pair appears with probability K / (N(N-1)/2)
        let (n, k, samples) = (200usize, 1000usize, 100usize);
        let spec = ErSpec::new(n, k, Directedness::Undirected, 11).with_samples(samples);
        let p = k as f64 / (n * (n - 1) / 2) as f64;
        let watched = [(0u32, 1u32), (5, 150), (198, 199)];
        let mut hits = [0usize; 3];
        let mut total_deg0 = 0usize;
        for g in generate_er(&spec).unwrap() {
            for (i, &(a, b)) in watched.iter().enumerate() {
                if g.has_link(NodeId(a), NodeId(b)) {
                    hits[i] += 1;
                }
            }
            total_deg0 += g.out_neighbors(NodeId(0)).len();
        }
        let se = (p * (1.0 - p) / samples as f64).sqrt();
        for h in hits {
            assert!(((h as f64 / samples as f64) - p).abs() <= 3.0 * se + 1.0 / samples as f64);
        }
        // node 0's mean degree pools 199 pairs per sample
        let pooled = total_deg0 as f64 / (samples * (n - 1)) as f64;
        let pooled_se = (p * (1.0 - p) / (samples * (n - 1)) as f64).sqrt();
        assert!((pooled - p).abs() <= 3.0 * pooled_se, "{pooled} vs {p}");
    }
}
