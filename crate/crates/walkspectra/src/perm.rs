//! One-line-notation permutations on {0, ..., n-1}.
//!
//! Composition is left-to-right: `(p * q)(x) = q(p(x))`, so a walk step is a
//! right multiplication by the drawn generator.

/// A permutation stored as its image vector: `images[x]` is the image of x.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// Validates that `images` is a bijection on 0..n.
    pub fn from_images(images: Vec<usize>) -> crate::Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(crate::Error::InvalidArgument(format!(
                    "not a permutation of 0..{n}: {images:?}"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// The 3-cycle a -> b -> c -> a as a permutation of 0..n.
    pub fn three_cycle(n: usize, a: usize, b: usize, c: usize) -> Self {
        debug_assert!(a != b && b != c && a != c);
        debug_assert!(a < n && b < n && c < n);
        let mut images: Vec<usize> = (0..n).collect();
        images[a] = b;
        images[b] = c;
        images[c] = a;
        Perm { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Left-to-right composition: `self` first, then `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.n(), other.n());
        Perm {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.n()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Perm { images }
    }

    /// True for even permutations. O(n) via cycle counting.
    pub fn is_even(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }

    /// Number of fixed points.
    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(x, &y)| x == y)
            .count()
    }
}
