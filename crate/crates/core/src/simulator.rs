//! Monte Carlo simulation of the Poisson field of interferers.
//!
//! Every realization draws interferer positions once and gives each
//! interferer independent unit-mean exponential fading towards the receiver
//! and towards the eavesdropper, so the two interference sums share their
//! geometry but not their fading. A co-located eavesdropper (`u = 0`)
//! observes the receiver's interference sum itself.
//!
//! Interferers are generated outward from the origin by a generator private
//! to the realization. Enlarging the truncation radius therefore appends
//! far interferers and leaves every other draw unchanged.
//!
//! Samples are generated in fixed-size batches. Batch `b` seeds a
//! xoshiro256++ generator from ChaCha8 stream `b` keyed by the seed, so
//! results do not depend on the number of worker threads.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Poisson};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{NetworkConfig, Pathloss, RateThresholds};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "SECRECY_GEOM_THREADS";

const BATCH: usize = 1024;
const DEFAULT_TAIL: f64 = 1e-4;
const MAX_TAIL: f64 = 1e-3;

/// Monte Carlo settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub seed: u64,
    pub samples: usize,
    /// Radius of the disk (or quarter disk) holding the simulated interferers.
    pub truncation_radius: f64,
    /// Pair realizations with antithetic fading marks.
    pub antithetic: bool,
}

/// Mean interference an eavesdropper at distance `u` misses when the field
/// is truncated at radius `radius`, bounded by 2πλ(R − u)^{2−η}/(η − 2).
pub fn truncation_tail(cfg: &NetworkConfig, radius: f64) -> f64 {
    let reach = radius - cfg.u;
    if reach <= 1.0 {
        return f64::INFINITY;
    }
    2.0 * PI * cfg.lambda * reach.powf(2.0 - cfg.eta) / (cfg.eta - 2.0)
}

/// Radius at which [`truncation_tail`] equals 1e-4.
pub fn default_truncation_radius(cfg: &NetworkConfig) -> f64 {
    let eta = cfg.eta;
    let reach = (2.0 * PI * cfg.lambda / ((eta - 2.0) * DEFAULT_TAIL)).powf(1.0 / (eta - 2.0));
    reach.max(1.0) * (1.0 + 1e-12) + cfg.u
}

impl SimConfig {
    pub fn new(cfg: &NetworkConfig, seed: u64, samples: usize) -> Result<Self> {
        let sim = Self {
            seed,
            samples,
            truncation_radius: default_truncation_radius(cfg),
            antithetic: false,
        };
        sim.validate(cfg)?;
        Ok(sim)
    }

    pub fn with_truncation_radius(self, cfg: &NetworkConfig, radius: f64) -> Result<Self> {
        let sim = Self {
            truncation_radius: radius,
            ..self
        };
        sim.validate(cfg)?;
        Ok(sim)
    }

    pub fn with_antithetic(self, antithetic: bool) -> Self {
        Self { antithetic, ..self }
    }

    pub fn validate(&self, cfg: &NetworkConfig) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidConfig("samples must be at least 1".into()));
        }
        let tail = truncation_tail(cfg, self.truncation_radius);
        if !(tail < MAX_TAIL) {
            return Err(Error::InvalidConfig(format!(
                "truncation radius {} leaves a mean-interference tail of {tail:e}, above {MAX_TAIL:e}",
                self.truncation_radius
            )));
        }
        Ok(())
    }
}

/// A Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

impl SimEstimate {
    /// Whether `value` lies within `k` standard errors of the estimate.
    pub fn agrees_with(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.std_error
    }
}

/// One draw of the network: interference powers and received signal
/// powers at the receiver and the eavesdropper.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Realization {
    pub interference_r: f64,
    pub interference_e: f64,
    pub signal_r: f64,
    pub signal_e: f64,
}

impl Realization {
    /// SIR at the receiver; infinite without interferers.
    pub fn sir_receiver(&self) -> f64 {
        self.signal_r / self.interference_r
    }

    /// SIR at the eavesdropper; infinite without interferers.
    pub fn sir_eaves(&self) -> f64 {
        self.signal_e / self.interference_e
    }

    /// Instantaneous secrecy capacity max{0, log₂((1+γ_r)/(1+γ_e))}.
    pub fn secrecy_capacity(&self) -> f64 {
        let (gr, ge) = (self.sir_receiver(), self.sir_eaves());
        if gr <= ge {
            0.0
        } else {
            (gr.ln_1p() - ge.ln_1p()) / std::f64::consts::LN_2
        }
    }
}

/// Generates interferers in order of increasing distance from the origin,
/// so that a larger truncation radius only appends points.
struct Field {
    radius_sq: f64,
    sector: f64,
    /// Expected number of interferers per unit of squared radius.
    density: f64,
}

impl Field {
    fn new(cfg: &NetworkConfig, sim: &SimConfig) -> Self {
        let sector = cfg.sector_angle();
        Self {
            radius_sq: sim.truncation_radius * sim.truncation_radius,
            sector,
            density: cfg.lambda * sector / 2.0,
        }
    }

    fn for_each<R: Rng>(&self, rng: &mut R, mut f: impl FnMut(&mut R, f64, f64)) {
        let mut r_sq = 0.0;
        loop {
            let gap: f64 = Exp1.sample(rng);
            r_sq += gap / self.density;
            if r_sq >= self.radius_sq {
                return;
            }
            let (sin, cos) = (self.sector * rng.random::<f64>()).sin_cos();
            let r = r_sq.sqrt();
            f(rng, r * cos, r * sin);
        }
    }
}

/// Generator for batch `batch`: xoshiro256++ seeded from ChaCha8 stream
/// `batch` under key `seed`.
fn batch_rng(seed: u64, batch: u64) -> Xoshiro256PlusPlus {
    let mut key = ChaCha8Rng::seed_from_u64(seed);
    key.set_stream(batch);
    Xoshiro256PlusPlus::from_seed(key.random())
}

/// Draws one realization of the network.
pub fn sample_realization<R: Rng>(cfg: &NetworkConfig, sim: &SimConfig, rng: &mut R) -> Result<Realization> {
    sim.validate(cfg)?;
    Ok(draw(cfg, &Field::new(cfg, sim), &Pathloss::new(cfg.eta), rng))
}

fn draw<R: Rng>(cfg: &NetworkConfig, field: &Field, g: &Pathloss, rng: &mut R) -> Realization {
    let u = cfg.u;
    let colocated = u == 0.0;
    let theta = rng.random_range(0.0..PI / 2.0);
    let h0: f64 = Exp1.sample(rng);
    let h0e: f64 = Exp1.sample(rng);
    let mut local = Xoshiro256PlusPlus::seed_from_u64(rng.next_u64());
    let (mut ir, mut ie) = (0.0, 0.0);
    field.for_each(&mut local, |rng, x, y| {
        let h: f64 = Exp1.sample(rng);
        ir += h * g.at_sq(x * x + y * y);
        if !colocated {
            let he: f64 = Exp1.sample(rng);
            ie += he * g.at_sq((x - u) * (x - u) + y * y);
        }
    });
    if colocated {
        ie = ir;
    }
    Realization {
        interference_r: ir,
        interference_e: ie,
        signal_r: h0 * cfg.link_gain(),
        signal_e: h0e * cfg.eaves_gain(theta),
    }
}

fn antithetic_exp<R: Rng>(rng: &mut R) -> (f64, f64) {
    let v: f64 = rng.random();
    (-(1.0 - v).ln(), -v.max(f64::MIN_POSITIVE).ln())
}

/// Two realizations sharing interferer positions and transmitter angle, with
/// every fading mark `−ln U` in the first replaced by `−ln(1 − U)` in the
/// second.
fn draw_pair<R: Rng>(cfg: &NetworkConfig, field: &Field, g: &Pathloss, rng: &mut R) -> [Realization; 2] {
    let u = cfg.u;
    let colocated = u == 0.0;
    let theta = rng.random_range(0.0..PI / 2.0);
    let (h0, h0_anti) = antithetic_exp(rng);
    let (h0e, h0e_anti) = antithetic_exp(rng);
    let mut local = Xoshiro256PlusPlus::seed_from_u64(rng.next_u64());
    let mut sums = [[0.0f64; 2]; 2];
    field.for_each(&mut local, |rng, x, y| {
        let gr = g.at_sq(x * x + y * y);
        let (a, b) = antithetic_exp(rng);
        sums[0][0] += a * gr;
        sums[1][0] += b * gr;
        if !colocated {
            let ge = g.at_sq((x - u) * (x - u) + y * y);
            let (a, b) = antithetic_exp(rng);
            sums[0][1] += a * ge;
            sums[1][1] += b * ge;
        }
    });
    let z = cfg.eaves_gain(theta);
    let make = |s: [f64; 2], h: f64, he: f64| Realization {
        interference_r: s[0],
        interference_e: if colocated { s[0] } else { s[1] },
        signal_r: h * cfg.link_gain(),
        signal_e: he * z,
    };
    [make(sums[0], h0, h0e), make(sums[1], h0_anti, h0e_anti)]
}

/// Runs `f` on a thread pool capped by [`THREADS_ENV`] when it is set.
pub fn with_thread_cap<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let cap = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    match cap.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

fn mean_and_error(values: impl Iterator<Item = f64>) -> SimEstimate {
    let (mut s1, mut s2, mut n) = (CompensatedSum::default(), CompensatedSum::default(), 0usize);
    for v in values {
        s1.add(v);
        s2.add(v * v);
        n += 1;
    }
    let mean = s1.total() / n as f64;
    let var = if n > 1 {
        ((s2.total() - n as f64 * mean * mean) / (n as f64 - 1.0)).max(0.0)
    } else {
        0.0
    };
    SimEstimate {
        mean,
        std_error: (var / n as f64).sqrt(),
        samples: n,
    }
}

/// A reusable set of realizations for one network configuration; every
/// estimator reads the same draws.
#[derive(Debug, Clone)]
pub struct SampleSet {
    realizations: Vec<Realization>,
    paired: bool,
}

impl SampleSet {
    /// Draws `sim.samples` realizations (rounded up to an even count when
    /// antithetic pairing is on).
    pub fn generate(cfg: &NetworkConfig, sim: &SimConfig) -> Result<Self> {
        cfg.validate()?;
        sim.validate(cfg)?;
        let field = Field::new(cfg, sim);
        let g = Pathloss::new(cfg.eta);
        let samples = if sim.antithetic {
            sim.samples.div_ceil(2) * 2
        } else {
            sim.samples
        };
        let realizations = in_batches(sim.seed, samples, |rng, len, out| {
            while out.len() < len {
                if sim.antithetic {
                    out.extend(draw_pair(cfg, &field, &g, rng));
                } else {
                    out.push(draw(cfg, &field, &g, rng));
                }
            }
        });
        Ok(Self {
            realizations,
            paired: sim.antithetic,
        })
    }

    /// Draws only the receiver side: interferer distances are sampled
    /// directly and the eavesdropper fields of every realization are NaN.
    /// Antithetic pairing is ignored.
    pub fn generate_receiver_only(cfg: &NetworkConfig, sim: &SimConfig) -> Result<Self> {
        cfg.validate()?;
        sim.validate(cfg)?;
        let radius_sq = sim.truncation_radius * sim.truncation_radius;
        let count = Poisson::new(cfg.lambda * cfg.sector_angle() / 2.0 * radius_sq)
            .map_err(|e| Error::InvalidConfig(format!("interferer count: {e}")))?;
        let g = Pathloss::new(cfg.eta);
        let link = cfg.link_gain();
        let realizations = in_batches(sim.seed, sim.samples, |rng, len, out| {
            for _ in 0..len {
                let n = count.sample(rng) as u64;
                let mut ir = 0.0;
                for _ in 0..n {
                    let r2 = radius_sq * rng.random::<f64>();
                    let h: f64 = Exp1.sample(rng);
                    ir += h * g.at_sq(r2);
                }
                let h0: f64 = Exp1.sample(rng);
                out.push(Realization {
                    interference_r: ir,
                    interference_e: f64::NAN,
                    signal_r: h0 * link,
                    signal_e: f64::NAN,
                });
            }
        });
        Ok(Self {
            realizations,
            paired: false,
        })
    }

    pub fn realizations(&self) -> &[Realization] {
        &self.realizations
    }

    pub fn len(&self) -> usize {
        self.realizations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.realizations.is_empty()
    }

    /// Mean of `f` over the realizations; antithetic pairs are averaged
    /// before the standard error is formed.
    pub fn estimate(&self, f: impl Fn(&Realization) -> f64) -> SimEstimate {
        if self.paired {
            let est = mean_and_error(self.realizations.chunks(2).map(|p| 0.5 * (f(&p[0]) + f(&p[1]))));
            SimEstimate {
                samples: self.len(),
                ..est
            }
        } else {
            mean_and_error(self.realizations.iter().map(f))
        }
    }

    /// Receiver connection frequency, γ_r > μ.
    pub fn connection(&self, mu: f64) -> SimEstimate {
        self.estimate(|r| (r.sir_receiver() > mu) as u8 as f64)
    }

    /// Eavesdropper connection frequency, γ_e > σ.
    pub fn eaves_connection(&self, sigma: f64) -> SimEstimate {
        self.estimate(|r| (r.sir_eaves() > sigma) as u8 as f64)
    }

    /// Secure connectivity frequency, γ_r > μ and γ_e < σ.
    pub fn secure_connectivity(&self, rates: &RateThresholds) -> SimEstimate {
        self.estimate(|r| (r.sir_receiver() > rates.mu && r.sir_eaves() < rates.sigma) as u8 as f64)
    }

    /// Average secrecy capacity in bits.
    pub fn capacity(&self) -> SimEstimate {
        self.estimate(Realization::secrecy_capacity)
    }

    /// Average capacity without secrecy, E{log₂(1+γ_r)}.
    pub fn plain_capacity(&self) -> SimEstimate {
        self.estimate(|r| r.sir_receiver().ln_1p() / std::f64::consts::LN_2)
    }

    /// Mean of the receiver interference.
    pub fn interference_mean(&self) -> SimEstimate {
        self.estimate(|r| r.interference_r)
    }

    /// Variance of the receiver interference with a batch-means standard
    /// error.
    pub fn interference_variance(&self) -> SimEstimate {
        self.batch_statistic(|batch| {
            let m = batch.iter().map(|r| r.interference_r).sum::<f64>() / batch.len() as f64;
            batch.iter().map(|r| (r.interference_r - m).powi(2)).sum::<f64>() / (batch.len() as f64 - 1.0)
        })
    }

    /// Pearson correlation of the two interference sums with a batch-means
    /// standard error; exactly one when the sums coincide.
    pub fn correlation(&self) -> SimEstimate {
        if self.realizations.iter().all(|r| r.interference_r == r.interference_e) {
            return SimEstimate {
                mean: 1.0,
                std_error: 0.0,
                samples: self.len(),
            };
        }
        self.batch_statistic(pearson)
    }

    /// Evaluates `stat` on the whole set and on 50 contiguous batches; the
    /// spread of the batch values gives the standard error.
    fn batch_statistic(&self, stat: impl Fn(&[Realization]) -> f64) -> SimEstimate {
        let n = self.len();
        let whole = stat(&self.realizations);
        let batches = 50usize;
        let size = (n / batches) & !1;
        if size < 4 {
            return SimEstimate {
                mean: whole,
                std_error: f64::NAN,
                samples: n,
            };
        }
        let values: Vec<f64> = self.realizations.chunks_exact(size).take(batches).map(&stat).collect();
        let spread = mean_and_error(values.iter().copied());
        SimEstimate {
            mean: whole,
            std_error: spread.std_error * ((size * batches) as f64 / n as f64).sqrt(),
            samples: n,
        }
    }
}

/// Fills batches of at most [`BATCH`] realizations in parallel and
/// concatenates them in batch order.
fn in_batches<F>(seed: u64, samples: usize, fill: F) -> Vec<Realization>
where
    F: Fn(&mut Xoshiro256PlusPlus, usize, &mut Vec<Realization>) + Sync,
{
    let batches = samples.div_ceil(BATCH);
    let chunks: Vec<Vec<Realization>> = with_thread_cap(|| {
        (0..batches)
            .into_par_iter()
            .map(|b| {
                let mut rng = batch_rng(seed, b as u64);
                let len = BATCH.min(samples - b * BATCH);
                let mut out = Vec::with_capacity(len + 1);
                fill(&mut rng, len, &mut out);
                out.truncate(len);
                out
            })
            .collect()
    });
    chunks.into_iter().flatten().collect()
}

fn pearson(batch: &[Realization]) -> f64 {
    let n = batch.len() as f64;
    let mr = batch.iter().map(|r| r.interference_r).sum::<f64>() / n;
    let me = batch.iter().map(|r| r.interference_e).sum::<f64>() / n;
    let (mut sre, mut srr, mut see) = (0.0, 0.0, 0.0);
    for r in batch {
        let (a, b) = (r.interference_r - mr, r.interference_e - me);
        sre += a * b;
        srr += a * a;
        see += b * b;
    }
    sre / (srr * see).sqrt()
}

pub fn estimate_connection(cfg: &NetworkConfig, sim: &SimConfig, mu: f64) -> Result<SimEstimate> {
    Ok(SampleSet::generate(cfg, sim)?.connection(mu))
}

pub fn estimate_psc(cfg: &NetworkConfig, sim: &SimConfig, rates: &RateThresholds) -> Result<SimEstimate> {
    Ok(SampleSet::generate(cfg, sim)?.secure_connectivity(rates))
}

pub fn estimate_rho(cfg: &NetworkConfig, sim: &SimConfig) -> Result<SimEstimate> {
    Ok(SampleSet::generate(cfg, sim)?.correlation())
}

pub fn estimate_capacity(cfg: &NetworkConfig, sim: &SimConfig) -> Result<SimEstimate> {
    Ok(SampleSet::generate(cfg, sim)?.capacity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::receiver_connection;
    use crate::model::Geometry;

    fn cfg(geometry: Geometry, u: f64) -> NetworkConfig {
        NetworkConfig::new(geometry, 0.2, 4.0, 1.0, u).unwrap()
    }

    #[test]
    fn default_radius_meets_tail_target() {
        let c = cfg(Geometry::Bulk, 1.0);
        let sim = SimConfig::new(&c, 1, 10).unwrap();
        let tail = truncation_tail(&c, sim.truncation_radius);
        assert!(tail <= 1e-4 && tail > 0.99e-4);
        assert!(sim.with_truncation_radius(&c, 10.0).is_err());
        assert!(SimConfig::new(&c, 1, 0).is_err());
    }

    #[test]
    fn deterministic_replay() {
        let c = cfg(Geometry::Corner, 1.0);
        let sim = SimConfig::new(&c, 42, 3000).unwrap();
        let a = SampleSet::generate(&c, &sim).unwrap();
        let b = SampleSet::generate(&c, &sim).unwrap();
        assert_eq!(a.realizations(), b.realizations());
        let other = SampleSet::generate(&c, &SimConfig { seed: 43, ..sim }).unwrap();
        assert_ne!(a.realizations()[0], other.realizations()[0]);
    }

    #[test]
    fn thread_count_does_not_change_draws() {
        let c = cfg(Geometry::Bulk, 2.0);
        let sim = SimConfig::new(&c, 21, 2500).unwrap();
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| SampleSet::generate(&c, &sim).unwrap())
        };
        assert_eq!(run(1).realizations(), run(3).realizations());
    }

    #[test]
    fn receiver_only_mode_matches_moments() {
        let c = cfg(Geometry::Corner, 1.0);
        let sim = SimConfig::new(&c, 17, 40_000).unwrap();
        let set = SampleSet::generate_receiver_only(&c, &sim).unwrap();
        let exact = crate::interference::receiver_stats(&c);
        assert!(set.interference_mean().agrees_with(exact.mean, 3.0));
        assert!(set.interference_variance().agrees_with(exact.variance, 3.0));
        assert!(set.realizations()[0].interference_e.is_nan());
    }

    #[test]
    fn exponential_marks_have_unit_mean() {
        let mut rng = batch_rng(5, 0);
        let n = 1_000_000;
        let mean = (0..n).map(|_| -> f64 { Exp1.sample(&mut rng) }).sum::<f64>() / n as f64;
        assert!((mean - 1.0).abs() < 3e-3);
        let anti = (0..n)
            .map(|_| {
                let (a, b) = antithetic_exp(&mut rng);
                a + b
            })
            .sum::<f64>()
            / (2 * n) as f64;
        assert!((anti - 1.0).abs() < 3e-3);
    }

    #[test]
    fn colocated_sums_coincide() {
        let c = cfg(Geometry::Bulk, 0.0);
        let sim = SimConfig::new(&c, 3, 500).unwrap();
        assert_eq!(estimate_rho(&c, &sim).unwrap().mean, 1.0);
    }

    #[test]
    fn sparse_field_gives_certain_connection() {
        let c = NetworkConfig::new(Geometry::Corner, 1e-9, 4.0, 1.0, 1.0).unwrap();
        let sim = SimConfig::new(&c, 9, 200).unwrap();
        let est = estimate_connection(&c, &sim, 1e6).unwrap();
        assert_eq!(est.mean, 1.0);
    }

    #[test]
    fn connection_matches_closed_form() {
        let c = cfg(Geometry::Corner, 1.0);
        let sim = SimConfig::new(&c, 11, 100_000).unwrap();
        let est = estimate_connection(&c, &sim, 1.0).unwrap();
        let exact = receiver_connection(&c, 1.0).unwrap().value;
        assert!(est.agrees_with(exact, 3.0), "{est:?} vs {exact}");
    }

    #[test]
    fn antithetic_pairs_reduce_error() {
        let c = cfg(Geometry::Corner, 1.0);
        let plain = SimConfig::new(&c, 13, 20_000).unwrap();
        let exact = receiver_connection(&c, 1.0).unwrap().value;
        let a = estimate_connection(&c, &plain, 1.0).unwrap();
        let b = estimate_connection(&c, &plain.with_antithetic(true), 1.0).unwrap();
        assert!(b.agrees_with(exact, 3.0), "{b:?} vs {exact}");
        assert!(b.std_error < a.std_error);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::default();
        s.add(1e16);
        for _ in 0..10 {
            s.add(1.0);
        }
        s.add(-1e16);
        assert_eq!(s.total(), 10.0);
    }
}
