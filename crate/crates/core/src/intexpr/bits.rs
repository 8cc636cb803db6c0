/// A set of naturals in `[0, bound]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Members {
    bound: usize,
    words: Vec<u64>,
}

impl Members {
    pub fn empty(bound: usize) -> Self {
        Members {
            bound,
            words: vec![0; bound / 64 + 1],
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn contains(&self, v: usize) -> bool {
        v <= self.bound && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v <= self.bound, "{v} beyond bound {}", self.bound);
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(move |(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn first_missing(&self) -> Option<usize> {
        (0..=self.bound).find(|&v| !self.contains(v))
    }

    pub fn union_with(&mut self, other: &Members) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    fn trim(&mut self) {
        let extra = 63 - self.bound % 64;
        if let Some(last) = self.words.last_mut() {
            *last &= u64::MAX >> extra;
        }
    }

    // `self | (self << k)`, truncated.
    fn or_shifted(&mut self, src: &Members, k: usize) {
        let (q, r) = (k / 64, k % 64);
        for i in (q..self.words.len()).rev() {
            let lo = src.words[i - q];
            let mut w = lo << r;
            if r > 0 && i > q {
                w |= src.words[i - q - 1] >> (64 - r);
            }
            self.words[i] |= w;
        }
        self.trim();
    }

    /// `{x + y}` truncated to the bound.
    pub fn sumset(&self, other: &Members) -> Members {
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Members::empty(self.bound);
        for k in small.iter() {
            out.or_shifted(big, k);
        }
        out
    }

    /// All finite sums of members, including the empty sum.
    pub fn closure(&self) -> Members {
        let mut out = Members::empty(self.bound);
        out.insert(0);
        for g in self.iter().filter(|&g| g > 0) {
            if out.contains(g) {
                continue;
            }
            // Adding `g·2^i` for every `i` closes under `+g`.
            let mut step = g;
            while step <= self.bound {
                let snapshot = out.clone();
                out.or_shifted(&snapshot, step);
                step *= 2;
            }
        }
        out
    }
}
