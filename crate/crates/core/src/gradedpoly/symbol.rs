use std::fmt;
use std::str::FromStr;

/// Number of symbols in the fixed table.
pub const NSYM: usize = 15;

/// The fixed symbol table: curve parameters, point coordinates and the
/// classical invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Mu1,
    Mu2,
    Mu3,
    Mu4,
    Mu6,
    Xu,
    Yu,
    Xv,
    Yv,
    Xw,
    Yw,
    Xs,
    Ys,
    G2,
    G3,
}

impl Symbol {
    pub const ALL: [Symbol; NSYM] = [
        Symbol::Mu1,
        Symbol::Mu2,
        Symbol::Mu3,
        Symbol::Mu4,
        Symbol::Mu6,
        Symbol::Xu,
        Symbol::Yu,
        Symbol::Xv,
        Symbol::Yv,
        Symbol::Xw,
        Symbol::Yw,
        Symbol::Xs,
        Symbol::Ys,
        Symbol::G2,
        Symbol::G3,
    ];

    pub const MU: [Symbol; 5] = [Symbol::Mu1, Symbol::Mu2, Symbol::Mu3, Symbol::Mu4, Symbol::Mu6];

    /// Names of the points carrying coordinate symbols, in order.
    pub const POINTS: [&'static str; 4] = ["u", "v", "w", "s"];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Symbol {
        Self::ALL[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::Mu1 => "mu1",
            Symbol::Mu2 => "mu2",
            Symbol::Mu3 => "mu3",
            Symbol::Mu4 => "mu4",
            Symbol::Mu6 => "mu6",
            Symbol::Xu => "x_u",
            Symbol::Yu => "y_u",
            Symbol::Xv => "x_v",
            Symbol::Yv => "y_v",
            Symbol::Xw => "x_w",
            Symbol::Yw => "y_w",
            Symbol::Xs => "x_s",
            Symbol::Ys => "y_s",
            Symbol::G2 => "g2",
            Symbol::G3 => "g3",
        }
    }

    /// Weight: μⱼ ↦ −j, x ↦ −2, y ↦ −3, g₂ ↦ −4, g₃ ↦ −6.
    pub fn weight(self) -> i32 {
        match self {
            Symbol::Mu1 => -1,
            Symbol::Mu2 => -2,
            Symbol::Mu3 => -3,
            Symbol::Mu4 => -4,
            Symbol::Mu6 => -6,
            Symbol::Xu | Symbol::Xv | Symbol::Xw | Symbol::Xs => -2,
            Symbol::Yu | Symbol::Yv | Symbol::Yw | Symbol::Ys => -3,
            Symbol::G2 => -4,
            Symbol::G3 => -6,
        }
    }

    pub fn is_mu(self) -> bool {
        self.index() < 5
    }

    pub fn is_coordinate(self) -> bool {
        (5..13).contains(&self.index())
    }

    /// Point index (0 = u, 1 = v, ...) and whether the symbol is the y-coordinate.
    pub fn coordinate(self) -> Option<(usize, bool)> {
        if self.is_coordinate() {
            let k = self.index() - 5;
            Some((k / 2, k % 2 == 1))
        } else {
            None
        }
    }

    pub fn x_of(point: usize) -> Symbol {
        Self::ALL[5 + 2 * point]
    }

    pub fn y_of(point: usize) -> Symbol {
        Self::ALL[6 + 2 * point]
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown symbol {0:?}")]
pub struct UnknownSymbol(pub String);

impl FromStr for Symbol {
    type Err = UnknownSymbol;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Symbol::ALL
            .iter()
            .copied()
            .find(|sym| sym.name() == s)
            .ok_or_else(|| UnknownSymbol(s.to_string()))
    }
}
