//! Classification data for Chevalley groups and their twisted forms.
//!
//! A [`GroupSpec`] names a group ("A3", "2A4", "3D4", "E8", "T2"); [`lookup`]
//! turns it into a [`GroupDatum`] holding the complex dimension, the degrees
//! of the fundamental Weyl group invariants, and the roots of unity by which
//! Frobenius twists each invariant. Everything downstream is computed from
//! those three pieces of data.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
    Torus,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E6,
        Family::E7,
        Family::E8,
        Family::F4,
        Family::G2,
        Family::Torus,
    ];

    /// Smallest admissible rank.
    pub fn min_rank(self) -> u32 {
        match self {
            Family::A | Family::B | Family::Torus => 1,
            Family::C => 2,
            Family::D => 4,
            other => other.fixed_rank().unwrap(),
        }
    }

    /// Rank of an exceptional family, `None` for the infinite series.
    pub fn fixed_rank(self) -> Option<u32> {
        match self {
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            Family::F4 => Some(4),
            Family::G2 => Some(2),
            _ => None,
        }
    }

    fn letter(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E6 | Family::E7 | Family::E8 => "E",
            Family::F4 => "F",
            Family::G2 => "G",
            Family::Torus => "T",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Twist {
    None,
    Twist2,
    Twist3,
}

impl Twist {
    /// Order of the diagram automorphism; the field exponent must be a multiple of it.
    pub fn order(self) -> u32 {
        match self {
            Twist::None => 1,
            Twist::Twist2 => 2,
            Twist::Twist3 => 3,
        }
    }
}

/// A validated family/rank/twist triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    family: Family,
    rank: u32,
    twist: Twist,
}

impl GroupSpec {
    pub fn new(family: Family, rank: u32, twist: Twist) -> Result<Self> {
        if let Some(fixed) = family.fixed_rank() {
            if rank != fixed {
                return Err(Error::InvalidSpec(format!("{family:?} has rank {fixed}, not {rank}")));
            }
        } else if rank < family.min_rank() {
            return Err(Error::InvalidSpec(format!(
                "{family:?} requires rank >= {}, got {rank}",
                family.min_rank()
            )));
        }
        let twist_ok = match twist {
            Twist::None => true,
            Twist::Twist2 => match family {
                Family::A => rank >= 2,
                Family::D | Family::E6 => true,
                _ => false,
            },
            Twist::Twist3 => family == Family::D && rank == 4,
        };
        if !twist_ok {
            return Err(Error::InvalidSpec(format!(
                "no twist of order {} for {family:?}{rank}",
                twist.order()
            )));
        }
        Ok(GroupSpec { family, rank, twist })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn twist(&self) -> Twist {
        self.twist
    }

    pub fn is_twisted(&self) -> bool {
        self.twist != Twist::None
    }

    /// Every admissible spec with rank at most `max_rank`, in canonical order.
    pub fn all_up_to_rank(max_rank: u32) -> Vec<GroupSpec> {
        let mut out = Vec::new();
        for family in Family::ALL {
            for twist in [Twist::None, Twist::Twist2, Twist::Twist3] {
                let ranks = match family.fixed_rank() {
                    Some(r) => r..=r,
                    None => family.min_rank()..=max_rank,
                };
                for rank in ranks {
                    if rank > max_rank {
                        continue;
                    }
                    if let Ok(spec) = GroupSpec::new(family, rank, twist) {
                        out.push(spec);
                    }
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.twist {
            Twist::None => {}
            Twist::Twist2 => f.write_str("2")?,
            Twist::Twist3 => f.write_str("3")?,
        }
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

/// Parse the ASCII spec grammar: an optional twist digit, a family letter, a rank.
pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let bad = || Error::Parse(text.to_string());
    let (twist, rest) = match text.as_bytes().first() {
        Some(b'2') => (Twist::Twist2, &text[1..]),
        Some(b'3') => (Twist::Twist3, &text[1..]),
        _ => (Twist::None, text),
    };
    let mut chars = rest.chars();
    let letter = chars.next().ok_or_else(bad)?;
    let digits = chars.as_str();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') && digits.len() > 1 {
        return Err(bad());
    }
    let rank: u32 = digits.parse().map_err(|_| bad())?;
    let family = match (letter, rank) {
        ('A', _) => Family::A,
        ('B', _) => Family::B,
        ('C', _) => Family::C,
        ('D', _) => Family::D,
        ('T', _) if twist == Twist::None => Family::Torus,
        ('E', 6) if twist != Twist::Twist3 => Family::E6,
        ('E', 7) if twist == Twist::None => Family::E7,
        ('E', 8) if twist == Twist::None => Family::E8,
        ('F', 4) if twist == Twist::None => Family::F4,
        ('G', 2) if twist == Twist::None => Family::G2,
        _ => return Err(bad()),
    };
    GroupSpec::new(family, rank, twist)
}

/// A root of unity `exp(2πi k/n)`, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootOfUnity {
    numerator: u32,
    order: u32,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { numerator: 0, order: 1 };
    pub const MINUS_ONE: RootOfUnity = RootOfUnity { numerator: 1, order: 2 };
    /// The primitive cube root of unity `exp(2πi/3)`.
    pub const XI: RootOfUnity = RootOfUnity { numerator: 1, order: 3 };
    pub const XI2: RootOfUnity = RootOfUnity { numerator: 2, order: 3 };

    /// `exp(2πi k/n)`; `k` is taken modulo `n` and the fraction reduced.
    pub fn new(numerator: u32, order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("root of unity of order 0".into()));
        }
        let k = numerator % order;
        let g = gcd(k, order);
        Ok(RootOfUnity { numerator: k / g, order: order / g })
    }

    pub fn numerator(&self) -> u32 {
        self.numerator
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    pub fn mul(self, other: RootOfUnity) -> RootOfUnity {
        let l = self.order / gcd(self.order, other.order) * other.order;
        let k = self.numerator * (l / self.order) + other.numerator * (l / other.order);
        RootOfUnity::new(k % l, l).unwrap()
    }

    pub fn pow(self, e: u64) -> RootOfUnity {
        let n = self.order as u64;
        let k = (self.numerator as u64 * (e % n)) % n;
        RootOfUnity::new(k as u32, self.order).unwrap()
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Catalog entry: the data that determines orders, point counts and zeta functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDatum {
    pub spec: GroupSpec,
    pub dim: u64,
    pub degrees: Vec<u32>,
    pub eigenvalues: Vec<RootOfUnity>,
}

impl GroupDatum {
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree_sum(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).sum()
    }

    /// `dim - Σ d_j`, the constant shift in the Euler-product exponents.
    /// Equals the number of positive roots.
    pub fn euler_shift(&self) -> u64 {
        self.dim - self.degree_sum()
    }

    /// The datum seen over `F_{q^i}`: every eigenvalue raised to the `i`-th power.
    pub fn frobenius_power(&self, i: u64) -> GroupDatum {
        GroupDatum {
            eigenvalues: self.eigenvalues.iter().map(|e| e.pow(i)).collect(),
            ..self.clone()
        }
    }

    /// Same dimension and degrees with every eigenvalue replaced by 1. Its
    /// expansions majorize the twisted ones term by term.
    pub fn magnitude(&self) -> GroupDatum {
        GroupDatum {
            eigenvalues: vec![RootOfUnity::ONE; self.eigenvalues.len()],
            ..self.clone()
        }
    }
}

/// Catalog lookup for a validated spec.
pub fn lookup(spec: GroupSpec) -> GroupDatum {
    let n = spec.rank;
    let nn = n as u64;
    let (dim, degrees): (u64, Vec<u32>) = match spec.family {
        Family::A => (nn * (nn + 2), (2..=n + 1).collect()),
        Family::B | Family::C => (nn * (2 * nn + 1), (1..=n).map(|j| 2 * j).collect()),
        Family::D if spec.twist == Twist::Twist3 => (28, vec![2, 4, 4, 6]),
        Family::D => (
            nn * (2 * nn - 1),
            std::iter::once(n).chain((1..n).map(|j| 2 * j)).collect(),
        ),
        Family::G2 => (14, vec![2, 6]),
        Family::F4 => (52, vec![2, 6, 8, 12]),
        Family::E6 => (78, vec![2, 5, 6, 8, 9, 12]),
        Family::E7 => (133, vec![2, 6, 8, 10, 12, 14, 18]),
        Family::E8 => (248, vec![2, 8, 12, 14, 18, 20, 24, 30]),
        Family::Torus => (nn, vec![1; n as usize]),
    };
    let eigenvalues = match (spec.family, spec.twist) {
        (_, Twist::None) => vec![RootOfUnity::ONE; degrees.len()],
        // -1 on the even-degree invariants 2, 4, 6, ...
        (Family::A, Twist::Twist2) => degrees
            .iter()
            .map(|d| if d % 2 == 0 { RootOfUnity::MINUS_ONE } else { RootOfUnity::ONE })
            .collect(),
        // -1 on the Pfaffian-type invariant of degree n, listed first.
        (Family::D, Twist::Twist2) => std::iter::once(RootOfUnity::MINUS_ONE)
            .chain(std::iter::repeat(RootOfUnity::ONE).take(degrees.len() - 1))
            .collect(),
        (Family::E6, Twist::Twist2) => degrees
            .iter()
            .map(|&d| if d == 5 || d == 9 { RootOfUnity::MINUS_ONE } else { RootOfUnity::ONE })
            .collect(),
        (Family::D, Twist::Twist3) => vec![RootOfUnity::ONE, RootOfUnity::XI, RootOfUnity::XI2, RootOfUnity::ONE],
        _ => unreachable!("GroupSpec::new rejects {spec}"),
    };
    GroupDatum { spec, dim, degrees, eigenvalues }
}

/// A prime power `q = p^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePowerQ {
    p: u64,
    exponent: u32,
    value: u64,
}

impl PrimePowerQ {
    /// Factor `q` by trial division; fails unless `q` is a power of a single prime.
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        let p = smallest_prime_factor(q);
        let mut rest = q;
        let mut exponent = 0;
        while rest % p == 0 {
            rest /= p;
            exponent += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower(q));
        }
        Ok(PrimePowerQ { p, exponent, value: q })
    }

    pub fn from_parts(p: u64, exponent: u32) -> Result<Self> {
        if p < 2 || smallest_prime_factor(p) != p {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if exponent == 0 {
            return Err(Error::InvalidArgument("exponent must be positive".into()));
        }
        let value = p
            .checked_pow(exponent)
            .ok_or_else(|| Error::InvalidArgument(format!("{p}^{exponent} overflows u64")))?;
        Ok(PrimePowerQ { p, exponent, value })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// All prime powers `2 <= q <= max`.
    pub fn all_up_to(max: u64) -> Vec<PrimePowerQ> {
        (2..=max).filter_map(|q| PrimePowerQ::new(q).ok()).collect()
    }
}

impl fmt::Display for PrimePowerQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

/// Twisted forms only exist over fields whose exponent is a multiple of the twist order.
pub fn validate_q(spec: GroupSpec, q: PrimePowerQ) -> Result<()> {
    let required = spec.twist.order();
    if q.exponent % required != 0 {
        return Err(Error::TwistFieldMismatch { q: q.value, p: q.p, exponent: q.exponent, required });
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct CatalogEntry {
    pub group: String,
    pub family: Family,
    pub twist: u32,
    pub rank: u32,
    pub rank_bounds: RankBounds,
    pub dim: u64,
    pub degrees: Vec<u32>,
    pub eigenvalues: Vec<RootOfUnity>,
}

#[derive(Debug, Serialize)]
pub struct RankBounds {
    pub min: u32,
    pub max: Option<u32>,
}

/// The catalog instantiated for every admissible spec of rank at most `max_rank`.
pub fn catalog_entries(max_rank: u32) -> Vec<CatalogEntry> {
    GroupSpec::all_up_to_rank(max_rank)
        .into_iter()
        .map(|spec| {
            let datum = lookup(spec);
            let min = match (spec.family, spec.twist) {
                (Family::A, Twist::Twist2) => 2,
                (f, _) => f.min_rank(),
            };
            CatalogEntry {
                group: spec.to_string(),
                family: spec.family,
                twist: spec.twist.order(),
                rank: spec.rank,
                rank_bounds: RankBounds {
                    min,
                    max: spec.family.fixed_rank().or((spec.twist == Twist::Twist3).then_some(4)),
                },
                dim: datum.dim,
                degrees: datum.degrees,
                eigenvalues: datum.eigenvalues,
            }
        })
        .collect()
}
