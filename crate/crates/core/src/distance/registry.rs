use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Measure family, following the eight-way taxonomy the catalog is organized by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Lp,
    L1,
    InnerProduct,
    SquaredChord,
    SquaredL2,
    ShannonEntropy,
    Vicissitude,
    Other,
}

/// Inputs on which a measure is defined without guards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InputDomain {
    Real,
    NonNegative,
    Positive,
}

impl InputDomain {
    pub fn contains(self, v: f64) -> bool {
        match self {
            InputDomain::Real => v.is_finite(),
            InputDomain::NonNegative => v.is_finite() && v >= 0.0,
            InputDomain::Positive => v.is_finite() && v > 0.0,
        }
    }
}

/// Static metadata for one distance measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceSpec {
    pub id: DistanceId,
    pub family: Family,
    pub symmetric: bool,
    /// `d(x, x) = 0` on the declared domain.
    pub zero_on_identity: bool,
    pub input_domain: InputDomain,
    /// The formula is this crate's choice for a measure that has no single
    /// agreed-upon definition.
    pub nonstandard_formula: bool,
}

macro_rules! distances {
    ($( $variant:ident = $code:literal, $name:literal, $family:ident, $domain:ident, sym: $sym:literal, zero: $zero:literal, nonstd: $nonstd:literal; )*) => {
        /// The 47 catalogued measures, numbered 1 through 47.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        #[repr(u8)]
        pub enum DistanceId {
            $( $variant = $code, )*
        }

        impl DistanceId {
            pub const ALL: [DistanceId; 47] = [ $( DistanceId::$variant, )* ];

            /// Canonical snake-case name.
            pub fn name(self) -> &'static str {
                match self {
                    $( DistanceId::$variant => $name, )*
                }
            }

            pub fn spec(self) -> DistanceSpec {
                match self {
                    $( DistanceId::$variant => DistanceSpec {
                        id: DistanceId::$variant,
                        family: Family::$family,
                        symmetric: $sym,
                        zero_on_identity: $zero,
                        input_domain: InputDomain::$domain,
                        nonstandard_formula: $nonstd,
                    }, )*
                }
            }
        }
    };
}

distances! {
    Chebyshev = 1, "chebyshev", Lp, Real, sym: true, zero: true, nonstd: false;
    ChiSquared = 2, "chi_squared", Lp, NonNegative, sym: true, zero: true, nonstd: false;
    Euclidean = 3, "euclidean", Lp, Real, sym: true, zero: true, nonstd: false;
    Gaussian = 4, "gaussian", Lp, Real, sym: true, zero: true, nonstd: true;
    LogEuclidean = 5, "log_euclidean", Lp, Real, sym: true, zero: true, nonstd: true;
    Manhattan = 6, "manhattan", Lp, Real, sym: true, zero: true, nonstd: false;
    BrayCurtis = 7, "bray_curtis", L1, NonNegative, sym: true, zero: true, nonstd: false;
    Canberra = 8, "canberra", L1, Real, sym: true, zero: true, nonstd: false;
    Gower = 9, "gower", L1, Real, sym: true, zero: true, nonstd: false;
    Kulczynski = 10, "kulczynski", L1, NonNegative, sym: true, zero: true, nonstd: false;
    Lorentzian = 11, "lorentzian", L1, Real, sym: true, zero: true, nonstd: false;
    NonIntersection = 12, "non_intersection", L1, Real, sym: true, zero: true, nonstd: false;
    Soergel = 13, "soergel", L1, NonNegative, sym: true, zero: true, nonstd: false;
    Chord = 14, "chord", InnerProduct, Real, sym: true, zero: true, nonstd: false;
    Cosine = 15, "cosine", InnerProduct, Real, sym: true, zero: true, nonstd: false;
    Dice = 16, "dice", InnerProduct, Real, sym: true, zero: true, nonstd: false;
    Jaccard = 17, "jaccard", InnerProduct, Real, sym: true, zero: true, nonstd: false;
    Bhattacharyya = 18, "bhattacharyya", SquaredChord, NonNegative, sym: true, zero: false, nonstd: false;
    Hellinger = 19, "hellinger", SquaredChord, NonNegative, sym: true, zero: true, nonstd: false;
    Matusita = 20, "matusita", SquaredChord, NonNegative, sym: true, zero: true, nonstd: false;
    SquaredChord = 21, "squared_chord", SquaredChord, NonNegative, sym: true, zero: true, nonstd: false;
    AdditiveSymmetricChiSquared = 22, "additive_symmetric_chi_squared", SquaredL2, Positive, sym: true, zero: true, nonstd: false;
    AverageEuclidean = 23, "average_euclidean", SquaredL2, Real, sym: true, zero: true, nonstd: false;
    Clark = 24, "clark", SquaredL2, NonNegative, sym: true, zero: true, nonstd: false;
    Divergence = 25, "divergence", SquaredL2, NonNegative, sym: true, zero: true, nonstd: false;
    LogSquaredEuclidean = 26, "log_squared_euclidean", SquaredL2, Real, sym: true, zero: true, nonstd: true;
    MeanCensoredEuclidean = 27, "mean_censored_euclidean", SquaredL2, Real, sym: true, zero: true, nonstd: false;
    NeymanChiSquared = 28, "neyman_chi_squared", SquaredL2, Positive, sym: false, zero: true, nonstd: false;
    PearsonChiSquared = 29, "pearson_chi_squared", SquaredL2, Positive, sym: false, zero: true, nonstd: false;
    SangviChiSquared = 30, "sangvi_chi_squared", SquaredL2, NonNegative, sym: true, zero: true, nonstd: false;
    SquaredChiSquared = 31, "squared_chi_squared", SquaredL2, NonNegative, sym: true, zero: true, nonstd: false;
    SquaredEuclidean = 32, "squared_euclidean", SquaredL2, Real, sym: true, zero: true, nonstd: false;
    Jeffreys = 33, "jeffreys", ShannonEntropy, Positive, sym: true, zero: true, nonstd: false;
    Jensen = 34, "jensen", ShannonEntropy, Positive, sym: true, zero: true, nonstd: false;
    JensenShannon = 35, "jensen_shannon", ShannonEntropy, Positive, sym: true, zero: true, nonstd: false;
    KDivergence = 36, "k_divergence", ShannonEntropy, Positive, sym: false, zero: true, nonstd: false;
    KullbackLeibler = 37, "kullback_leibler", ShannonEntropy, Positive, sym: false, zero: true, nonstd: false;
    Topsoe = 38, "topsoe", ShannonEntropy, Positive, sym: true, zero: true, nonstd: false;
    MaxSymmetricChiSquared = 39, "max_symmetric_chi_squared", Vicissitude, Positive, sym: true, zero: true, nonstd: false;
    MinSymmetricChiSquared = 40, "min_symmetric_chi_squared", Vicissitude, Positive, sym: true, zero: true, nonstd: false;
    VicisSymmetric1 = 41, "vicis_symmetric_1", Vicissitude, Positive, sym: true, zero: true, nonstd: false;
    VicisSymmetric2 = 42, "vicis_symmetric_2", Vicissitude, Positive, sym: true, zero: true, nonstd: false;
    VicisSymmetric3 = 43, "vicis_symmetric_3", Vicissitude, NonNegative, sym: true, zero: true, nonstd: false;
    VicisWaveHedges = 44, "vicis_wave_hedges", Vicissitude, Positive, sym: true, zero: true, nonstd: false;
    Hamming = 45, "hamming", Other, Real, sym: true, zero: true, nonstd: false;
    Hassanat = 46, "hassanat", Other, Real, sym: true, zero: true, nonstd: false;
    Statistic = 47, "statistic", Other, Real, sym: true, zero: true, nonstd: true;
}

impl DistanceId {
    /// Catalog number, 1 through 47.
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Self> {
        code.checked_sub(1)
            .and_then(|i| Self::ALL.get(i as usize))
            .copied()
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|d| d.name() == name)
    }

    pub fn valid_names() -> String {
        Self::ALL
            .iter()
            .map(|d| d.name())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Looks up the immutable registry entry for a measure.
pub fn registry_lookup(id: DistanceId) -> DistanceSpec {
    id.spec()
}

impl fmt::Display for DistanceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Accepts canonical names (`bray_curtis`) and catalog codes (`D7`, `d7`).
impl FromStr for DistanceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if let Some(id) = Self::from_name(&trimmed.to_ascii_lowercase()) {
            return Ok(id);
        }
        trimmed
            .strip_prefix(['D', 'd'])
            .and_then(|n| n.parse::<u8>().ok())
            .and_then(Self::from_code)
            .ok_or_else(|| Error::UnknownDistance {
                name: s.to_string(),
                valid: Self::valid_names(),
            })
    }
}

impl serde::Serialize for DistanceId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> serde::Deserialize<'de> for DistanceId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let name = String::deserialize(d)?;
        name.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_follow_catalog_order() {
        for (i, id) in DistanceId::ALL.iter().enumerate() {
            assert_eq!(id.code() as usize, i + 1);
            assert_eq!(DistanceId::from_code(id.code()), Some(*id));
            assert_eq!(id.name().parse::<DistanceId>().unwrap(), *id);
            assert_eq!(format!("D{}", id.code()).parse::<DistanceId>().unwrap(), *id);
        }
        assert_eq!(DistanceId::from_code(0), None);
        assert_eq!(DistanceId::from_code(48), None);
    }

    #[test]
    fn family_sizes() {
        let count = |f: Family| DistanceId::ALL.iter().filter(|d| d.spec().family == f).count();
        assert_eq!(count(Family::Lp), 6);
        assert_eq!(count(Family::L1), 7);
        assert_eq!(count(Family::InnerProduct), 4);
        assert_eq!(count(Family::SquaredChord), 4);
        assert_eq!(count(Family::SquaredL2), 11);
        assert_eq!(count(Family::ShannonEntropy), 6);
        assert_eq!(count(Family::Vicissitude), 6);
        assert_eq!(count(Family::Other), 3);
    }

    #[test]
    fn listed_entries() {
        let canberra = registry_lookup(DistanceId::Canberra);
        assert_eq!(canberra.id.name(), "canberra");
        assert_eq!(canberra.family, Family::L1);
        assert!(canberra.symmetric);
        assert_eq!(DistanceId::BrayCurtis.spec().family, Family::L1);
        assert_eq!(DistanceId::Bhattacharyya.spec().family, Family::SquaredChord);
        assert!(!DistanceId::Bhattacharyya.spec().zero_on_identity);
        assert_eq!(DistanceId::MaxSymmetricChiSquared.spec().family, Family::Vicissitude);
        assert_eq!(DistanceId::AdditiveSymmetricChiSquared.spec().family, Family::SquaredL2);
        assert!(!DistanceId::KullbackLeibler.spec().symmetric);
    }

    #[test]
    fn only_four_asymmetric() {
        let asym: Vec<u8> = DistanceId::ALL
            .iter()
            .filter(|d| !d.spec().symmetric)
            .map(|d| d.code())
            .collect();
        assert_eq!(asym, vec![28, 29, 36, 37]);
        let nonstd: Vec<u8> = DistanceId::ALL
            .iter()
            .filter(|d| d.spec().nonstandard_formula)
            .map(|d| d.code())
            .collect();
        assert_eq!(nonstd, vec![4, 5, 26, 47]);
    }

    #[test]
    fn unknown_name_lists_valid_ones() {
        let err = "taxicab".parse::<DistanceId>().unwrap_err();
        assert!(err.to_string().contains("bray_curtis"));
        assert!("D0".parse::<DistanceId>().is_err());
    }
}
