//! Plain-text experiment configuration.
//!
//! One `key = value` per line; `#` starts a comment. Keys:
//!
//! | key          | modes          | value                                           |
//! |--------------|----------------|-------------------------------------------------|
//! | `mode`       | all            | `scan`, `detect`, `gamma`, `verify`, `heights`  |
//! | `f`, `g`     | scan, detect   | polynomials, e.g. `x - 1`                       |
//! | `vars`       | scan, detect   | variable order, default: symbols of `f`, `g`    |
//! | `generators` | scan, detect   | `(2, 1); (1, 2)` — rationals allowed            |
//! | `group`      | scan, detect   | `sunits`: all S-units of the torus, with signs  |
//! | `signs`      | scan, detect   | `none` (default), `all`, or coordinates `1, 2`  |
//! | `S`          | scan, detect, heights | primes, e.g. `2, 3` (∞ is implicit)      |
//! | `B`          | scan, detect   | exponent box bound                              |
//! | `theta`, `A` | detect         | ratio threshold (0.25), normal bound (3)        |
//! | `n`, `ell`   | gamma          | ambient dimension and ℓ                         |
//! | `grid`       | gamma          | increasing levels, default `50, 100, 200`       |
//! | `points`     | heights        | `[2:3:1]; [5:25:1]`                             |
//! | `Y`          | heights        | forms cutting out Y, `X; Y`                     |
//! | `D`          | heights        | optional divisor for an integrality check       |
//! | `coords`     | heights        | coordinate names, default `X, Y, Z` style       |
//! | `seed`, `samples` | verify    | sampler seed (1) and samples per check (1000)   |
//! | `out`        | all            | CSV path                                        |

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use heightlab_core::detect::{DEFAULT_BOUND, DEFAULT_THRESHOLD};
use heightlab_core::gamma::{BlowupModel, DEFAULT_GRID};
use heightlab_core::gcd::GroupGamma;
use heightlab_core::heights::{PlaceSet, ProjPoint, SubschemeSpec};
use heightlab_core::poly::{default_vars, is_coprime, HomogPoly, MultiPoly};
use heightlab_core::Rational;

/// Where a value came from and what was wrong with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub origin: String,
    pub field: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_empty() {
            write!(f, "{}: {}", self.origin, self.message)
        } else {
            write!(
                f,
                "{}: field `{}`: {}",
                self.origin, self.field, self.message
            )
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Scan,
    Detect,
    Gamma,
    Verify,
    Heights,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "scan" => Mode::Scan,
            "detect" => Mode::Detect,
            "gamma" => Mode::Gamma,
            "verify" => Mode::Verify,
            "heights" => Mode::Heights,
            other => return Err(format!("unknown mode `{other}`")),
        })
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Scan => "scan",
            Mode::Detect => "detect",
            Mode::Gamma => "gamma",
            Mode::Verify => "verify",
            Mode::Heights => "heights",
        })
    }
}

const KEYS: &[&str] = &[
    "mode",
    "f",
    "g",
    "vars",
    "generators",
    "group",
    "signs",
    "S",
    "B",
    "theta",
    "A",
    "n",
    "ell",
    "grid",
    "points",
    "Y",
    "D",
    "coords",
    "seed",
    "samples",
    "out",
];

/// Raw key/value settings, each remembering its origin for diagnostics.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExperimentConfig {
    entries: BTreeMap<String, (String, String)>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let origin = format!("line {}", i + 1);
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(ConfigError {
                    origin,
                    field: String::new(),
                    message: "expected `key = value`".into(),
                });
            };
            let k = k.trim();
            if cfg.entries.contains_key(k) {
                return Err(ConfigError {
                    origin,
                    field: k.into(),
                    message: "duplicate key".into(),
                });
            }
            cfg.set(k, v.trim(), &origin)?;
        }
        Ok(cfg)
    }

    /// Sets or replaces a value; `origin` is used in later diagnostics.
    pub fn set(&mut self, key: &str, value: &str, origin: &str) -> Result<(), ConfigError> {
        if !KEYS.contains(&key) {
            return Err(ConfigError {
                origin: origin.into(),
                field: key.into(),
                message: format!("unknown key (expected one of: {})", KEYS.join(", ")),
            });
        }
        self.entries
            .insert(key.into(), (value.into(), origin.into()));
        Ok(())
    }

    /// Later settings win.
    pub fn merge(&mut self, other: &ExperimentConfig) {
        for (k, v) in &other.entries {
            self.entries.insert(k.clone(), v.clone());
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|(v, _)| v.as_str())
    }

    fn err(&self, key: &str, message: impl Into<String>) -> ConfigError {
        ConfigError {
            origin: self
                .entries
                .get(key)
                .map_or_else(|| "config".into(), |(_, o)| o.clone()),
            field: key.into(),
            message: message.into(),
        }
    }

    fn required(&self, key: &str, mode: Mode) -> Result<&str, ConfigError> {
        self.get(key).ok_or_else(|| ConfigError {
            origin: "config".into(),
            field: key.into(),
            message: format!("required for mode `{mode}`"),
        })
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError>
    where
        T::Err: fmt::Display,
    {
        self.get(key)
            .map(|v| v.parse::<T>().map_err(|e| self.err(key, e.to_string())))
            .transpose()
    }

    pub fn mode(&self) -> Result<Mode, ConfigError> {
        let v = self.get("mode").ok_or_else(|| ConfigError {
            origin: "config".into(),
            field: "mode".into(),
            message: "no mode given (use a subcommand or `mode = ...`)".into(),
        })?;
        v.parse().map_err(|e: String| self.err("mode", e))
    }

    pub fn out(&self) -> Option<PathBuf> {
        self.get("out").map(PathBuf::from)
    }

    /// Checks every field the mode needs and builds the typed job.
    pub fn validate(&self) -> Result<Job, ConfigError> {
        let mode = self.mode()?;
        Ok(match mode {
            Mode::Scan => Job::Scan(self.scan_job(mode)?),
            Mode::Detect => {
                let scan = self.scan_job(mode)?;
                let theta = self.parsed::<f64>("theta")?.unwrap_or(DEFAULT_THRESHOLD);
                if !(theta > 0.0 && theta < 1.0) {
                    return Err(self.err("theta", "must lie in (0, 1)"));
                }
                let bound = self.parsed::<u32>("A")?.unwrap_or(DEFAULT_BOUND);
                if bound == 0 {
                    return Err(self.err("A", "must be positive"));
                }
                Job::Detect { scan, theta, bound }
            }
            Mode::Gamma => Job::Gamma(self.gamma_job(mode)?),
            Mode::Heights => Job::Heights(self.heights_job(mode)?),
            Mode::Verify => Job::Verify(VerifyJob {
                seed: self.parsed("seed")?.unwrap_or(1),
                samples: self.parsed("samples")?.unwrap_or(1000),
            }),
        })
    }

    fn places(&self) -> Result<PlaceSet, ConfigError> {
        match self.get("S") {
            None => Ok(PlaceSet::archimedean()),
            Some(v) => v.parse().map_err(|e| self.err("S", format!("{e}"))),
        }
    }

    fn scan_job(&self, mode: Mode) -> Result<ScanJob, ConfigError> {
        let f_text = self.required("f", mode)?;
        let g_text = self.required("g", mode)?;
        let vars = match self.get("vars") {
            Some(v) => split_list(v, ','),
            None => {
                MultiPoly::symbols(f_text).map_err(|e| self.err("f", e.to_string()))?;
                MultiPoly::symbols(g_text).map_err(|e| self.err("g", e.to_string()))?;
                MultiPoly::symbols(&format!("{f_text} + {g_text}"))
                    .map_err(|e| self.err("g", e.to_string()))?
            }
        };
        let f = MultiPoly::parse(f_text, &vars).map_err(|e| self.err("f", e.to_string()))?;
        let g = MultiPoly::parse(g_text, &vars).map_err(|e| self.err("g", e.to_string()))?;
        match is_coprime(&f, &g) {
            Ok(true) => {}
            Ok(false) => return Err(self.err("g", "f and g share a nonconstant factor")),
            Err(e) => return Err(self.err("g", e.to_string())),
        }
        let s = self.places()?;
        let n = vars.len();
        let gamma = match (self.get("group"), self.get("generators")) {
            (Some("sunits"), None) => {
                if self.get("signs").is_some() {
                    return Err(self.err("signs", "`group = sunits` already carries all signs"));
                }
                GroupGamma::s_units(n, &s).map_err(|e| self.err("group", e.to_string()))?
            }
            (Some(other), None) => {
                return Err(self.err("group", format!("unknown group `{other}` (only `sunits`)")))
            }
            (Some(_), Some(_)) => {
                return Err(self.err("generators", "give either `group` or `generators`"))
            }
            (None, None) => {
                return Err(ConfigError {
                    origin: "config".into(),
                    field: "generators".into(),
                    message: format!("required for mode `{mode}` (or `group = sunits`)"),
                })
            }
            (None, Some(text)) => {
                let gens = parse_tuples(text).map_err(|m| self.err("generators", m))?;
                let signs = self.signs(n)?;
                let gamma = GroupGamma::new(gens, signs)
                    .map_err(|e| self.err("generators", e.to_string()))?;
                gamma
                    .check_s_units(&s)
                    .map_err(|e| self.err("generators", format!("{e} for S = {s}")))?;
                gamma
            }
        };
        let bound = self
            .parsed::<u32>("B")?
            .ok_or_else(|| self.required("B", mode).unwrap_err())?;
        Ok(ScanJob {
            f,
            g,
            gamma,
            s,
            bound,
        })
    }

    fn signs(&self, n: usize) -> Result<Vec<bool>, ConfigError> {
        match self.get("signs") {
            None | Some("none") => Ok(vec![false; n]),
            Some("all") => Ok(vec![true; n]),
            Some(list) => {
                let mut out = vec![false; n];
                for item in split_list(list, ',') {
                    let i: usize = item
                        .parse()
                        .map_err(|_| self.err("signs", format!("not a coordinate: `{item}`")))?;
                    if i == 0 || i > n {
                        return Err(self.err("signs", format!("coordinate {i} out of 1..={n}")));
                    }
                    out[i - 1] = true;
                }
                Ok(out)
            }
        }
    }

    fn gamma_job(&self, mode: Mode) -> Result<GammaJob, ConfigError> {
        let n = self
            .parsed::<u32>("n")?
            .ok_or_else(|| self.required("n", mode).unwrap_err())?;
        let model = BlowupModel::new(n).map_err(|e| self.err("n", e.to_string()))?;
        let ell = self
            .parsed::<u32>("ell")?
            .ok_or_else(|| self.required("ell", mode).unwrap_err())?;
        if ell == 0 {
            return Err(self.err("ell", "must be positive"));
        }
        let grid = match self.get("grid") {
            None => DEFAULT_GRID.to_vec(),
            Some(v) => split_list(v, ',')
                .iter()
                .map(|x| {
                    x.parse::<u32>()
                        .map_err(|_| self.err("grid", format!("not a level: `{x}`")))
                })
                .collect::<Result<Vec<_>, _>>()?,
        };
        if grid.is_empty() || grid[0] == 0 || grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(self.err("grid", "levels must be positive and strictly increasing"));
        }
        Ok(GammaJob { model, ell, grid })
    }

    fn heights_job(&self, mode: Mode) -> Result<HeightsJob, ConfigError> {
        let points: Vec<ProjPoint> = split_list(self.required("points", mode)?, ';')
            .iter()
            .map(|p| p.parse().map_err(|e| self.err("points", format!("{e}"))))
            .collect::<Result<_, _>>()?;
        let len = points.first().map(ProjPoint::len).unwrap_or(0);
        if points.iter().any(|p| p.len() != len) {
            return Err(self.err("points", "points must share a dimension"));
        }
        let coords = match self.get("coords") {
            Some(v) => split_list(v, ','),
            None => default_coords(len),
        };
        if coords.len() != len {
            return Err(self.err(
                "coords",
                format!("{} names for {len} coordinates", coords.len()),
            ));
        }
        let form = |key: &str, t: &str| {
            MultiPoly::parse(t, &coords)
                .and_then(HomogPoly::new)
                .map_err(|e| self.err(key, format!("`{t}`: {e}")))
        };
        let forms = split_list(self.required("Y", mode)?, ';')
            .iter()
            .map(|t| form("Y", t))
            .collect::<Result<Vec<_>, _>>()?;
        let y = SubschemeSpec::new(forms).map_err(|e| self.err("Y", e.to_string()))?;
        let divisor = self.get("D").map(|t| form("D", t)).transpose()?;
        Ok(HeightsJob {
            points,
            y,
            divisor,
            s: self.places()?,
        })
    }
}

fn default_coords(len: usize) -> Vec<String> {
    match len {
        2 => ["X", "Y"].map(String::from).to_vec(),
        3 => ["X", "Y", "Z"].map(String::from).to_vec(),
        4 => ["X", "Y", "Z", "W"].map(String::from).to_vec(),
        _ => default_vars(len),
    }
}

fn split_list(s: &str, sep: char) -> Vec<String> {
    s.split(sep)
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(String::from)
        .collect()
}

/// `(2, 1); (1/3, 2)` → rows of rationals.
fn parse_tuples(s: &str) -> Result<Vec<Vec<Rational>>, String> {
    split_list(s, ';')
        .iter()
        .map(|t| {
            let inner = t
                .strip_prefix('(')
                .and_then(|x| x.strip_suffix(')'))
                .unwrap_or(t);
            split_list(inner, ',')
                .iter()
                .map(|x| x.parse::<Rational>().map_err(|e| format!("`{t}`: {e}")))
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ScanJob {
    pub f: MultiPoly,
    pub g: MultiPoly,
    pub gamma: GroupGamma,
    pub s: PlaceSet,
    pub bound: u32,
}

#[derive(Debug, Clone)]
pub struct GammaJob {
    pub model: BlowupModel,
    pub ell: u32,
    pub grid: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct HeightsJob {
    pub points: Vec<ProjPoint>,
    pub y: SubschemeSpec,
    pub divisor: Option<HomogPoly>,
    pub s: PlaceSet,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyJob {
    pub seed: u64,
    pub samples: usize,
}

#[derive(Debug, Clone)]
pub enum Job {
    Scan(ScanJob),
    Detect {
        scan: ScanJob,
        theta: f64,
        bound: u32,
    },
    Gamma(GammaJob),
    Heights(HeightsJob),
    Verify(VerifyJob),
}
