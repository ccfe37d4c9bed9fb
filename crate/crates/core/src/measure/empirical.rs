use crate::error::{Error, Result};

/// Largest table of counts kept for a single word length.
const MAX_CELLS: usize = 1 << 24;

/// Counts of all words of length `1..=max_len` in a finite sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalDistribution {
    alphabet_len: usize,
    max_len: usize,
    sample_length: usize,
    /// `counts[k - 1][code]`, words encoded in base `alphabet_len`.
    counts: Vec<Vec<u64>>,
}

impl EmpiricalDistribution {
    pub fn new(alphabet_len: usize, max_len: usize) -> Result<Self> {
        if alphabet_len == 0 || max_len == 0 {
            return Err(Error::InvalidInput("empty alphabet or zero cylinder depth".into()));
        }
        let mut counts = Vec::with_capacity(max_len);
        let mut cells = 1usize;
        for _ in 0..max_len {
            cells = cells
                .checked_mul(alphabet_len)
                .filter(|&c| c <= MAX_CELLS)
                .ok_or_else(|| Error::InvalidInput("cylinder depth too large for the alphabet".into()))?;
            counts.push(vec![0; cells]);
        }
        Ok(EmpiricalDistribution {
            alphabet_len,
            max_len,
            sample_length: 0,
            counts,
        })
    }

    pub fn from_sample(sample: &[usize], alphabet_len: usize, max_len: usize) -> Result<Self> {
        let mut e = Self::new(alphabet_len, max_len)?;
        e.add_sample(sample)?;
        Ok(e)
    }

    fn add_sample(&mut self, sample: &[usize]) -> Result<()> {
        if let Some(&bad) = sample.iter().find(|&&a| a >= self.alphabet_len) {
            return Err(Error::InvalidInput(format!("symbol {bad} outside the alphabet")));
        }
        let t = sample.len();
        for i in 0..t {
            let mut code = 0;
            for k in 0..self.max_len.min(t - i) {
                code = code * self.alphabet_len + sample[i + k];
                self.counts[k][code] += 1;
            }
        }
        self.sample_length += t;
        Ok(())
    }

    pub fn alphabet_len(&self) -> usize {
        self.alphabet_len
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn sample_length(&self) -> usize {
        self.sample_length
    }

    pub fn count(&self, w: &[usize]) -> u64 {
        if w.is_empty() || w.len() > self.max_len || w.iter().any(|&a| a >= self.alphabet_len) {
            return 0;
        }
        let code = w.iter().fold(0, |c, &a| c * self.alphabet_len + a);
        self.counts[w.len() - 1][code]
    }

    /// Relative frequency of `w` among the `T − |w| + 1` windows.
    pub fn frequency(&self, w: &[usize]) -> f64 {
        if w.len() > self.sample_length {
            return 0.0;
        }
        self.count(w) as f64 / (self.sample_length - w.len() + 1) as f64
    }

    /// Largest frequency difference over all words of length at most
    /// `max_len`.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(
            (self.alphabet_len, self.max_len),
            (other.alphabet_len, other.max_len),
            "distributions over different word sets"
        );
        let mut d: f64 = 0.0;
        for k in 0..self.max_len {
            let (na, nb) = (self.windows(k + 1), other.windows(k + 1));
            for (a, b) in self.counts[k].iter().zip(&other.counts[k]) {
                d = d.max((*a as f64 / na - *b as f64 / nb).abs());
            }
        }
        d
    }

    fn windows(&self, k: usize) -> f64 {
        (self.sample_length + 1).saturating_sub(k).max(1) as f64
    }

    /// Words with positive count and their frequencies, shortest first.
    pub fn nonzero(&self) -> Vec<(Vec<usize>, f64)> {
        let mut out = Vec::new();
        for k in 0..self.max_len {
            for (code, &c) in self.counts[k].iter().enumerate() {
                if c > 0 {
                    let mut w = vec![0; k + 1];
                    let mut x = code;
                    for slot in w.iter_mut().rev() {
                        *slot = x % self.alphabet_len;
                        x /= self.alphabet_len;
                    }
                    out.push((w, c as f64 / self.windows(k + 1)));
                }
            }
        }
        out
    }
}
