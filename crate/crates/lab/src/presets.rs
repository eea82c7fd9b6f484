//! Named configurations reproducing the documented experiments.

use crate::config::{ConfigError, ExperimentConfig};

pub struct Preset {
    pub name: &'static str,
    pub about: &'static str,
    pub text: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "cz-example",
        about: "gcd scan over u = (2^a, 2^c), B = 5",
        text: "mode = scan\nf = x - 1\ng = y - 1\ngenerators = (2, 1); (1, 2)\nS = 2\nB = 5\n",
    },
    Preset {
        name: "cz-diagonal",
        about: "gcd scan over u = (2^a, 2^c), B = 12",
        text: "mode = scan\nf = x - 1\ng = y - 1\ngenerators = (2, 1); (1, 2)\nS = 2\nB = 12\n",
    },
    Preset {
        name: "cz-detect",
        about: "translate detection on the B = 12 scan, default theta and A",
        text: "mode = detect\nf = x - 1\ng = y - 1\ngenerators = (2, 1); (1, 2)\nS = 2\nB = 12\ntheta = 0.25\nA = 3\n",
    },
    Preset {
        name: "cz-detect-strict",
        about: "translate detection with theta = 0.5, A = 2",
        text: "mode = detect\nf = x - 1\ng = y - 1\ngenerators = (2, 1); (1, 2)\nS = 2\nB = 12\ntheta = 0.5\nA = 2\n",
    },
    Preset {
        name: "detect-parabola",
        about: "theta = 0.4 also picks up the y = x^2 translate",
        text: "mode = detect\nf = x - 1\ng = y - 1\ngenerators = (2, 1); (1, 2)\nS = 2\nB = 12\ntheta = 0.4\nA = 2\n",
    },
    Preset {
        name: "cz-sunits",
        about: "translate detection over all {2,3}-units of the plane torus, B = 4",
        text: "mode = detect\nf = x - 1\ng = y - 1\ngroup = sunits\nS = 2, 3\nB = 4\n",
    },
    Preset {
        name: "gamma-l1",
        about: "gamma and its bound, n = 2, l = 1",
        text: "mode = gamma\nn = 2\nell = 1\n",
    },
    Preset {
        name: "gamma-l10",
        about: "gamma and its bound, n = 2, l = 10",
        text: "mode = gamma\nn = 2\nell = 10\n",
    },
    Preset {
        name: "gamma-l50",
        about: "gamma and its bound, n = 2, l = 50",
        text: "mode = gamma\nn = 2\nell = 50\n",
    },
    Preset {
        name: "gamma-n3-l10",
        about: "gamma and its bound, n = 3, l = 10",
        text: "mode = gamma\nn = 3\nell = 10\ngrid = 10, 20, 40\n",
    },
    Preset {
        name: "heights-example",
        about: "local Weil functions of the point [0:0:1]",
        text: "mode = heights\npoints = [2:3:1]; [5:25:1]; [3/4:1:1]\nY = X; Y\nS = 2\n",
    },
    Preset {
        name: "integral-triangle",
        about: "{2,3}-integral points for the coordinate triangle",
        text: "mode = heights\npoints = [1:1:1]; [2:1:1]; [12:1:1]; [1/18:1:1]; [1/6:1:1]\nY = X*Y*Z\nD = X*Y*Z\nS = 2, 3\n",
    },
    Preset {
        name: "integral-line",
        about: "[5:1] is not integral for X = 0 away from 5",
        text: "mode = heights\npoints = [5:1]\nY = X\nD = X\n",
    },
    Preset {
        name: "verify",
        about: "the invariant suite",
        text: "mode = verify\nseed = 1\nsamples = 1000\n",
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

impl Preset {
    pub fn config(&self) -> Result<ExperimentConfig, ConfigError> {
        ExperimentConfig::parse(self.text).map_err(|mut e| {
            e.origin = format!("preset {} {}", self.name, e.origin);
            e
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_validates() {
        for p in PRESETS {
            p.config()
                .unwrap()
                .validate()
                .unwrap_or_else(|e| panic!("{}: {e}", p.name));
        }
    }
}
