use std::fmt;

use super::CoreError;

/// A permutation of `{1, ..., n}`.
///
/// Stored zero-based; `images()` and `from_images` speak the one-based
/// convention used in the text formats.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<usize>,
}

impl Perm {
    /// Builds a permutation from one-based images.
    pub fn from_images(images: &[usize]) -> Result<Perm, CoreError> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut img = Vec::with_capacity(n);
        for &i in images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(CoreError::InvalidPerm(images.to_vec()));
            }
            seen[i - 1] = true;
            img.push(i - 1);
        }
        Ok(Perm { img })
    }

    /// Builds a permutation from zero-based images, panicking if they are not a bijection.
    pub fn from_zero_based(img: Vec<usize>) -> Perm {
        let n = img.len();
        let mut seen = vec![false; n];
        for &i in &img {
            assert!(i < n && !seen[i], "not a permutation: {img:?}");
            seen[i] = true;
        }
        Perm { img }
    }

    /// The identity on `n` points.
    pub fn same(n: usize) -> Perm {
        Perm { img: (0..n).collect() }
    }

    /// Exchanges a left block of `k` points with a right block of `m` points.
    pub fn cross(k: usize, m: usize) -> Perm {
        let img = (0..k + m)
            .map(|i| if i < k { i + m } else { i - k })
            .collect();
        Perm { img }
    }

    pub fn len(&self) -> usize {
        self.img.len()
    }

    pub fn is_empty(&self) -> bool {
        self.img.is_empty()
    }

    /// Zero-based image of the zero-based point `i`.
    pub fn at(&self, i: usize) -> usize {
        self.img[i]
    }

    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|i| i + 1).collect()
    }

    pub fn zero_based(&self) -> &[usize] {
        &self.img
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm, CoreError> {
        if self.len() != other.len() {
            return Err(CoreError::SizeMismatch(self.len(), other.len()));
        }
        Ok(Perm {
            img: other.img.iter().map(|&j| self.img[j]).collect(),
        })
    }

    /// Juxtaposition: `self` acts on the first block, `other` on the rest.
    pub fn star(&self, other: &Perm) -> Perm {
        let m = self.len();
        let mut img = self.img.clone();
        img.extend(other.img.iter().map(|&j| j + m));
        Perm { img }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0; self.len()];
        for (i, &j) in self.img.iter().enumerate() {
            img[j] = i;
        }
        Perm { img }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images().iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
