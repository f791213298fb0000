use std::fmt;

/// Maximum number of expansion variables in one series.
pub const MAXV: usize = 4;

/// Exponent vector over the expansion variables, ordered by total degree
/// first and then lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExpVec {
    deg: u16,
    e: [u8; MAXV],
}

impl ExpVec {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAXV, "too many expansion variables");
        let mut v = Self::default();
        for (i, &k) in exps.iter().enumerate() {
            v.e[i] = u8::try_from(k).expect("exponent too large");
            v.deg += k as u16;
        }
        v
    }

    pub fn unit(i: usize, k: u32) -> Self {
        let mut v = Self::default();
        v.e[i] = u8::try_from(k).expect("exponent too large");
        v.deg = k as u16;
        v
    }

    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn get(&self, i: usize) -> u32 {
        self.e[i] as u32
    }

    pub fn exps(&self, n: usize) -> Vec<u32> {
        self.e[..n].iter().map(|&x| x as u32).collect()
    }

    pub fn add(&self, o: &ExpVec) -> ExpVec {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(o.e.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        ExpVec { deg: self.deg + o.deg, e }
    }

    /// `self - unit(i, k)`, if nonnegative.
    pub fn lower(&self, i: usize, k: u32) -> Option<ExpVec> {
        let cur = self.e[i] as u32;
        if cur < k {
            return None;
        }
        let mut v = *self;
        v.e[i] = (cur - k) as u8;
        v.deg -= k as u16;
        Some(v)
    }

    pub fn raise(&self, i: usize, k: u32) -> ExpVec {
        self.add(&ExpVec::unit(i, k))
    }

    /// Moves exponent `i` to slot `map[i]`.
    pub fn remap(&self, map: &[usize]) -> ExpVec {
        let mut v = ExpVec { deg: self.deg, e: [0; MAXV] };
        for (i, &j) in map.iter().enumerate() {
            v.e[j] += self.e[i];
        }
        v
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.e)
    }
}
