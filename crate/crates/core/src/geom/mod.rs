//! Numeric model of inscribed polygons: configurations, parities, area
//! enumeration from side lengths and the radius polynomials.

mod config;
mod enumerate;
mod mobius;

pub use config::PolygonConfig;
pub use enumerate::{distinct_k2, enumerate_areas, AreaSolution, Branch, Enumeration, EnumerateOptions};
pub use mobius::{mobius_polynomial, mobius_specialized, MobiusPoly};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cyclic polygons close up on the circle; semicyclic ones close with a
/// diameter as the extra side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Cyclic,
    Semicyclic,
}

impl Family {
    pub fn delta(self) -> i32 {
        match self {
            Family::Cyclic => 1,
            Family::Semicyclic => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Cyclic => "cyclic",
            Family::Semicyclic => "semicyclic",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cyclic" => Ok(Family::Cyclic),
            "semicyclic" => Ok(Family::Semicyclic),
            _ => Err(Error::InvalidArgument(format!("unknown family `{s}`"))),
        }
    }
}

fn binomial_u64(n: u64, k: u64) -> u64 {
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Generic number of distinct squared areas for `n` given side lengths:
/// the degree of the area polynomial in `16 K^2`.
pub fn delta_count(n: usize, family: Family) -> Result<u64> {
    let min = match family {
        Family::Cyclic => 3,
        Family::Semicyclic => 2,
    };
    if n < min || n > 40 {
        return Err(Error::InvalidArgument(format!("n = {n} out of range for {}", family.name())));
    }
    let n64 = n as u64;
    let central = n64 * binomial_u64(n64 - 1, (n64 - 1) / 2) / 2;
    Ok(match family {
        Family::Cyclic => central - (1u64 << (n - 2)),
        Family::Semicyclic => central,
    })
}
