use std::fmt;

use crate::perm::Permutation;

/// Key of a `t_w` variable.
///
/// Ordered by the length of `w`, then by its one-line notation. The one-line
/// notation is packed four bits per entry, so `n <= 15`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TIndex {
    length: u8,
    packed: u64,
}

impl TIndex {
    pub fn of(w: &Permutation) -> Self {
        assert!(w.size() <= 15, "t-variables support n <= 15");
        let packed = w
            .one_line()
            .iter()
            .fold(0u64, |acc, &v| (acc << 4) | u64::from(v));
        TIndex {
            length: w.length() as u8,
            packed,
        }
    }

    pub fn permutation(&self) -> Permutation {
        let mut digits = Vec::new();
        let mut p = self.packed;
        while p != 0 {
            digits.push((p & 0xf) as u8);
            p >>= 4;
        }
        digits.reverse();
        Permutation::new(digits).expect("packed t-index always decodes")
    }
}

/// A polynomial variable: `x_i`, `y_i`, `q_i` (1-based) or `t_w`.
///
/// The derived order is the variable order used by the monomial order:
/// `x1 > x2 > ... > y1 > ... > q1 > ... > t-variables`, where "smaller in
/// `Ord`" means "greater variable".
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VarId {
    X(u8),
    Y(u8),
    Q(u8),
    T(TIndex),
}

impl VarId {
    pub fn t(w: &Permutation) -> Self {
        VarId::T(TIndex::of(w))
    }

    /// Weight in the grading: 1 for `x`/`y`, 2 for `q`, 0 for `t`.
    pub fn weight(&self) -> u32 {
        match self {
            VarId::X(_) | VarId::Y(_) => 1,
            VarId::Q(_) => 2,
            VarId::T(_) => 0,
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        match self {
            VarId::X(_) => Alphabet::X,
            VarId::Y(_) => Alphabet::Y,
            VarId::Q(_) => Alphabet::Q,
            VarId::T(_) => Alphabet::T,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Alphabet {
    X,
    Y,
    Q,
    T,
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::X(i) => write!(f, "x{i}"),
            VarId::Y(i) => write!(f, "y{i}"),
            VarId::Q(i) => write!(f, "q{i}"),
            VarId::T(t) => write!(f, "t{}", t.permutation()),
        }
    }
}

impl std::str::FromStr for VarId {
    type Err = crate::error::Error;

    /// Parses `x3`, `y1`, `q2` or `t[2,1,3]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || crate::error::Error::Internal(format!("unknown variable {s:?}"));
        let (head, rest) = s.split_at(s.char_indices().nth(1).map(|(i, _)| i).ok_or_else(bad)?);
        let index = || rest.parse::<u8>().map_err(|_| bad());
        match head {
            "x" => Ok(VarId::X(index()?)),
            "y" => Ok(VarId::Y(index()?)),
            "q" => Ok(VarId::Q(index()?)),
            "t" => Ok(VarId::t(&rest.parse::<Permutation>()?)),
            _ => Err(bad()),
        }
    }
}
