use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sensing::SamplingPattern;

/// Flat `key = value` settings. `#` starts a comment; keys are
/// case-sensitive and `_` is treated as `-`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

fn normalize_key(key: &str) -> String {
    key.trim().replace('_', "-")
}

impl Settings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!("line {}: expected key=value, got {line:?}", lineno + 1)));
            };
            let key = normalize_key(key);
            if key.is_empty() {
                return Err(Error::Config(format!("line {}: empty key", lineno + 1)));
            }
            if values.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(Error::Config(format!("line {}: duplicate key {key:?}", lineno + 1)));
            }
        }
        Ok(Settings { values })
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Sets `key`, replacing any value from the file.
    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.values.insert(normalize_key(key), value.into());
    }

    pub fn get_str(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        self.get_str(key)
            .map(|v| v.parse::<T>().map_err(|e| Error::Config(format!("{key}={v}: {e}"))))
            .transpose()
    }

    pub fn get_or<T: FromStr>(&self, key: &str, default: T) -> Result<T>
    where
        T::Err: fmt::Display,
    {
        Ok(self.get(key)?.unwrap_or(default))
    }

    /// Comma-separated list.
    pub fn get_list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>>
    where
        T::Err: fmt::Display,
    {
        self.get_str(key).map(|v| parse_list(key, v)).transpose()
    }

    /// Fails on any key outside `allowed`.
    pub fn check_known(&self, allowed: &[&str]) -> Result<()> {
        match self.values.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::Config(format!("unknown key {k:?} (allowed: {})", allowed.join(", ")))),
            None => Ok(()),
        }
    }
}

fn parse_list<T: FromStr>(key: &str, v: &str) -> Result<Vec<T>>
where
    T::Err: fmt::Display,
{
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| Error::Config(format!("{key}: {s:?}: {e}"))))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ensemble {
    Gaussian,
    CorrelatedBlock,
    WaveletTree,
}

impl FromStr for Ensemble {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "gaussian" => Ok(Ensemble::Gaussian),
            "correlated-block" | "correlated" => Ok(Ensemble::CorrelatedBlock),
            "wavelet-tree" | "wavelet" => Ok(Ensemble::WaveletTree),
            _ => Err(format!("unknown ensemble {s:?} (gaussian, correlated-block, wavelet-tree)")),
        }
    }
}

impl fmt::Display for Ensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ensemble::Gaussian => "gaussian",
            Ensemble::CorrelatedBlock => "correlated-block",
            Ensemble::WaveletTree => "wavelet-tree",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    PartInv,
    CoSaMP,
    PartInvWavelet,
}

impl FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "partinv" => Ok(Algorithm::PartInv),
            "cosamp" => Ok(Algorithm::CoSaMP),
            "partinv-wavelet" => Ok(Algorithm::PartInvWavelet),
            _ => Err(format!("unknown algorithm {s:?} (partinv, cosamp, partinv-wavelet)")),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::PartInv => "partinv",
            Algorithm::CoSaMP => "cosamp",
            Algorithm::PartInvWavelet => "partinv-wavelet",
        })
    }
}

/// How the candidate-set size `L` is chosen per cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LPolicy {
    EqualK,
    /// `max(K, ⌊0.8·M⌋)`.
    MaxK08M,
    /// Every listed value; values outside `[K, M)` are reported as skipped.
    Explicit(Vec<usize>),
}

impl LPolicy {
    /// The `L` values to run for a cell.
    pub fn values(&self, m: usize, k: usize) -> Vec<usize> {
        match self {
            LPolicy::EqualK => vec![k],
            LPolicy::MaxK08M => vec![k.max(m * 4 / 5)],
            LPolicy::Explicit(v) => v.clone(),
        }
    }
}

impl FromStr for LPolicy {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "equal-k" => Ok(LPolicy::EqualK),
            "max-k-0.8m" => Ok(LPolicy::MaxK08M),
            other => {
                let list = other.strip_prefix("list:").unwrap_or(other);
                let values: std::result::Result<Vec<usize>, _> =
                    list.split(',').map(|t| t.trim().parse::<usize>()).collect();
                match values {
                    Ok(v) if !v.is_empty() => Ok(LPolicy::Explicit(v)),
                    _ => Err(format!("unknown L policy {s:?} (equal-K, max-K-0.8M, or a list such as 4,6,8)")),
                }
            }
        }
    }
}

impl fmt::Display for LPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LPolicy::EqualK => f.write_str("equal-K"),
            LPolicy::MaxK08M => f.write_str("max-K-0.8M"),
            LPolicy::Explicit(v) => {
                let s: Vec<String> = v.iter().map(usize::to_string).collect();
                write!(f, "list:{}", s.join(","))
            }
        }
    }
}

/// `0.1, 0.2, …, 0.9`.
pub fn default_grid() -> Vec<f64> {
    (1..=9).map(|i| i as f64 / 10.0).collect()
}

/// Side length and decomposition depth of the wavelet-tree images.
pub const WAVELET_SIDE: usize = 32;
pub const WAVELET_LEVELS: usize = 5;

/// A `(δ, ρ)` sweep.
///
/// Cell dimensions are `M = round(δN)` and `K = max(1, round(ρM))`. For the
/// wavelet-tree ensemble `N` must be `32² = 1024`, every `δ` must be one of
/// the standard sampling rates `2/16, …, 14/16`, and `K` is rounded to a
/// whole number of 21-coefficient trees.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub ensemble: Ensemble,
    pub n: usize,
    pub deltas: Vec<f64>,
    pub rhos: Vec<f64>,
    pub trials: usize,
    pub algorithm: Algorithm,
    pub l_policy: LPolicy,
    pub seed: u64,
    /// `None` uses each algorithm's default cap.
    pub max_iterations: Option<usize>,
}

impl SweepConfig {
    /// Gaussian, `N = 256`, the `0.1…0.9` grid in both axes, 25 trials,
    /// PartInv with `L = K`.
    pub fn new(ensemble: Ensemble) -> Self {
        let wavelet = ensemble == Ensemble::WaveletTree;
        SweepConfig {
            ensemble,
            n: if wavelet { WAVELET_SIDE * WAVELET_SIDE } else { 256 },
            deltas: if wavelet {
                SamplingPattern::STANDARD_RATES.iter().map(|&r| r as f64 / 16.0).collect()
            } else {
                default_grid()
            },
            rhos: default_grid(),
            trials: if wavelet { 100 } else { 25 },
            algorithm: if wavelet { Algorithm::PartInvWavelet } else { Algorithm::PartInv },
            l_policy: if ensemble == Ensemble::CorrelatedBlock { LPolicy::MaxK08M } else { LPolicy::EqualK },
            seed: 0,
            max_iterations: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.n == 0 {
            return bad("N must be positive".into());
        }
        if self.deltas.is_empty() || self.rhos.is_empty() {
            return bad("delta and rho grids must be nonempty".into());
        }
        for (name, grid) in [("delta", &self.deltas), ("rho", &self.rhos)] {
            if let Some(v) = grid.iter().find(|v| !(**v > 0.0 && **v < 1.0)) {
                return bad(format!("{name} value {v} outside (0, 1)"));
            }
        }
        if let LPolicy::Explicit(v) = &self.l_policy {
            if v.is_empty() {
                return bad("explicit L list is empty".into());
            }
        }
        match self.ensemble {
            Ensemble::WaveletTree => {
                if self.n != WAVELET_SIDE * WAVELET_SIDE {
                    return bad(format!("wavelet-tree ensemble needs N = {}", WAVELET_SIDE * WAVELET_SIDE));
                }
                for &d in &self.deltas {
                    if sixteenths(d).is_none() {
                        return bad(format!("wavelet-tree delta {d} is not one of 2/16, 4/16, ..., 14/16"));
                    }
                }
            }
            _ => {
                if self.algorithm == Algorithm::PartInvWavelet {
                    return bad("partinv-wavelet needs the wavelet-tree ensemble".into());
                }
                if self.ensemble == Ensemble::CorrelatedBlock && self.n % 16 != 0 {
                    return bad("correlated-block ensemble needs N divisible by 16".into());
                }
            }
        }
        Ok(())
    }

    /// `M = round(δN)`.
    pub fn m_for(&self, delta: f64) -> usize {
        (delta * self.n as f64).round() as usize
    }

    /// `K = max(1, round(ρM))`.
    pub fn k_for(m: usize, rho: f64) -> usize {
        ((rho * m as f64).round() as usize).max(1)
    }

    /// `key=value` lines describing the configuration.
    pub fn describe(&self) -> Vec<(String, String)> {
        let list = |v: &[f64]| v.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
        let mut out = vec![
            ("ensemble".to_string(), self.ensemble.to_string()),
            ("n".to_string(), self.n.to_string()),
            ("deltas".to_string(), list(&self.deltas)),
            ("rhos".to_string(), list(&self.rhos)),
            ("trials".to_string(), self.trials.to_string()),
            ("algo".to_string(), self.algorithm.to_string()),
            ("l-policy".to_string(), self.l_policy.to_string()),
            ("seed".to_string(), self.seed.to_string()),
        ];
        if let Some(mi) = self.max_iterations {
            out.push(("max-iters".to_string(), mi.to_string()));
        }
        out
    }
}

/// `δ·16` when it is one of the standard sampling rates.
pub fn sixteenths(delta: f64) -> Option<usize> {
    let s = delta * 16.0;
    let r = s.round();
    ((s - r).abs() < 1e-9 && SamplingPattern::STANDARD_RATES.contains(&(r as usize))).then_some(r as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn settings_parse_and_override() {
        let mut s = Settings::parse("# sweep\nn = 256\ntrials=25 # per cell\n\nl_policy = equal-K\n").unwrap();
        assert_eq!(s.get::<usize>("n").unwrap(), Some(256));
        assert_eq!(s.get_str("l-policy"), Some("equal-K"));
        s.set("trials", "3");
        assert_eq!(s.get::<usize>("trials").unwrap(), Some(3));
        assert!(s.check_known(&["n", "trials", "l-policy"]).is_ok());
        assert!(s.check_known(&["n"]).is_err());
        assert!(Settings::parse("n 256").is_err());
        assert!(Settings::parse("n=1\nn=2").is_err());
        assert!(s.get::<usize>("l-policy").is_err());
    }

    #[test]
    fn lists() {
        let s = Settings::parse("deltas = 0.1, 0.5,0.9").unwrap();
        assert_eq!(s.get_list::<f64>("deltas").unwrap(), Some(vec![0.1, 0.5, 0.9]));
    }

    #[test]
    fn enums_round_trip() {
        for e in ["gaussian", "correlated-block", "wavelet-tree"] {
            assert_eq!(e.parse::<Ensemble>().unwrap().to_string(), e);
        }
        for a in ["partinv", "cosamp", "partinv-wavelet"] {
            assert_eq!(a.parse::<Algorithm>().unwrap().to_string(), a);
        }
        for p in ["equal-K", "max-K-0.8M", "list:4,6,8"] {
            assert_eq!(p.parse::<LPolicy>().unwrap().to_string(), p);
        }
        assert_eq!("4, 6".parse::<LPolicy>().unwrap(), LPolicy::Explicit(vec![4, 6]));
        assert!("often".parse::<LPolicy>().is_err());
    }

    #[test]
    fn validation() {
        let mut c = SweepConfig::new(Ensemble::Gaussian);
        assert!(c.validate().is_ok());
        c.trials = 0;
        assert!(c.validate().is_err());
        let mut c = SweepConfig::new(Ensemble::Gaussian);
        c.deltas = vec![1.0];
        assert!(c.validate().is_err());
        let mut c = SweepConfig::new(Ensemble::WaveletTree);
        assert!(c.validate().is_ok());
        c.deltas = vec![0.3];
        assert!(c.validate().is_err());
    }

    #[test]
    fn cell_dimensions() {
        let c = SweepConfig::new(Ensemble::Gaussian);
        assert_eq!(c.m_for(0.1), 26);
        assert_eq!(SweepConfig::k_for(26, 0.5), 13);
        assert_eq!(SweepConfig::k_for(26, 0.9), 23);
        assert_eq!(SweepConfig::k_for(3, 0.1), 1);
        assert_eq!(sixteenths(0.875), Some(14));
        assert_eq!(sixteenths(0.9), None);
    }
}
