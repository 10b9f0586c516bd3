//! Seeded instance families.
//!
//! All heights are drawn on the `1/D` grid, so generated instances are exact.
//! The same `(n, seed, D)` always yields the same instance.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Big first bar, `a >= b`.
    BigNonIncreasing,
    /// At least one bar above one half.
    Big,
    General,
    /// Green/red construction on which `M_w` may reach ratio `6k/(4k+1)`.
    Tight,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::BigNonIncreasing => "big-nonincreasing",
            Family::Big => "big",
            Family::General => "general",
            Family::Tight => "tight",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "big-nonincreasing" => Ok(Family::BigNonIncreasing),
            "big" => Ok(Family::Big),
            "general" => Ok(Family::General),
            "tight" => Ok(Family::Tight),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub family: Family,
    /// `n` for random families, `k` for the tight family.
    pub size: usize,
    pub seed: u64,
    pub denominator: u64,
}

impl GenSpec {
    pub fn generate(&self) -> Result<Instance> {
        match self.family {
            Family::BigNonIncreasing => {
                gen_big_nonincreasing(self.size, self.seed, self.denominator)
            }
            Family::Big => gen_big(self.size, self.seed, self.denominator),
            Family::General => gen_general(self.size, self.seed, self.denominator),
            Family::Tight => gen_tight_family(self.size, self.denominator),
        }
    }
}

fn generate_with(
    n: usize,
    seed: u64,
    denominator: u64,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> (u64, u64),
) -> Result<Instance> {
    if n == 0 {
        return Err(Error::SizeTooSmall);
    }
    if denominator == 0 {
        return Err(Error::ZeroDenominator);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let heights: Vec<_> = (0..n).map(|_| draw(&mut rng)).collect();
    Instance::from_numerators(denominator, &heights)
}

fn big_height(rng: &mut ChaCha8Rng, d: u64) -> u64 {
    rng.gen_range(d / 2 + 1..=d)
}

pub fn gen_big_nonincreasing(n: usize, seed: u64, denominator: u64) -> Result<Instance> {
    generate_with(n, seed, denominator, |rng| {
        let a = big_height(rng, denominator);
        (a, rng.gen_range(1..=a))
    })
}

pub fn gen_big(n: usize, seed: u64, denominator: u64) -> Result<Instance> {
    generate_with(n, seed, denominator, |rng| {
        let big = big_height(rng, denominator);
        let other = rng.gen_range(1..=denominator);
        if rng.gen_bool(0.5) {
            (big, other)
        } else {
            (other, big)
        }
    })
}

pub fn gen_general(n: usize, seed: u64, denominator: u64) -> Result<Instance> {
    generate_with(n, seed, denominator, |rng| {
        (
            rng.gen_range(1..=denominator),
            rng.gen_range(1..=denominator),
        )
    })
}

/// Green charts `(0.70, 0.30)` are ids `0..2k`, red charts `(0.35, 0.65)`
/// are ids `2k..4k`.
///
/// Green before green, red before red and green before red are the only
/// feasible unions, all 1-unions, so the chain of all greens then all reds
/// has length `4k + 1`. A green-red 1-union gives `(0.70, 0.65, 0.65)`,
/// which joins with nothing, so pairing every green with a red ends at
/// `6k`.
pub fn gen_tight_family(k: usize, denominator: u64) -> Result<Instance> {
    if k == 0 {
        return Err(Error::KTooSmall);
    }
    if !denominator.is_multiple_of(100) {
        return Err(Error::DenominatorNotHundredths(denominator));
    }
    let unit = denominator / 100;
    let green = (70 * unit, 30 * unit);
    let red = (35 * unit, 65 * unit);
    let mut heights = vec![green; 2 * k];
    heights.extend(std::iter::repeat_n(red, 2 * k));
    Instance::from_numerators(denominator, &heights)
}

/// Green `i` paired with red `i` (ids `i` and `2k + i`).
pub fn tight_green_red_pairs(inst: &Instance) -> Vec<(usize, usize)> {
    let half = inst.len() / 2;
    (0..half).map(|i| (i, half + i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_nonincreasing_postcondition() {
        let i = gen_big_nonincreasing(3, 5, 1000).unwrap();
        assert!(i.charts().iter().all(|c| 2 * c.a.0 > 1000 && c.a >= c.b));
        assert_eq!(i, gen_big_nonincreasing(3, 5, 1000).unwrap());
        assert_eq!(gen_big_nonincreasing(0, 5, 1000), Err(Error::SizeTooSmall));
    }

    #[test]
    fn big_family() {
        let i = gen_big(5, 1, 1000).unwrap();
        assert!(i.all_big());
        assert_eq!(i, gen_big(5, 1, 1000).unwrap());
        assert_ne!(i, gen_big(5, 2, 1000).unwrap());
        assert_eq!(gen_big(0, 1, 1000), Err(Error::SizeTooSmall));
    }

    #[test]
    fn big_orientation_is_balanced() {
        let i = gen_big(1000, 99, 1_000_000).unwrap();
        let first_big = i.charts().iter().filter(|c| 2 * c.a.0 > 1_000_000).count() as f64 / 1000.0;
        // The first bar is big when chosen (1/2) or when the other bar
        // happens to be drawn big too (1/2 * 1/2).
        assert!((first_big - 0.75).abs() <= 0.05, "{first_big}");
        let chosen_first = i.charts().iter().filter(|c| c.a >= c.b).count() as f64 / 1000.0;
        assert!((chosen_first - 0.5).abs() <= 0.05, "{chosen_first}");
    }

    #[test]
    fn general_family() {
        let i = gen_general(50, 3, 7).unwrap();
        assert!(i
            .charts()
            .iter()
            .all(|c| (1..=7).contains(&c.a.0) && (1..=7).contains(&c.b.0)));
        assert_eq!(i, gen_general(50, 3, 7).unwrap());
        assert_eq!(gen_general(0, 3, 7), Err(Error::SizeTooSmall));
    }

    #[test]
    fn tight_family_heights() {
        let i = gen_tight_family(1, 100).unwrap();
        assert_eq!(
            i.as_numerators(),
            vec![(70, 30), (70, 30), (35, 65), (35, 65)]
        );
        assert_eq!(gen_tight_family(0, 100), Err(Error::KTooSmall));
        assert_eq!(
            gen_tight_family(1, 10),
            Err(Error::DenominatorNotHundredths(10))
        );
        assert_eq!(
            tight_green_red_pairs(&gen_tight_family(2, 100).unwrap()),
            vec![(0, 4), (1, 5), (2, 6), (3, 7)]
        );
    }
}
