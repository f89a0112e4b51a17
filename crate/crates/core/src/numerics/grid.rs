use crate::scalar::Real;

/// Uniform grid with `cells + 1` nodes covering `[left, right]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UniformGrid<T> {
    pub left: T,
    pub right: T,
    pub h: T,
    pub cells: usize,
}

impl<T: Real> UniformGrid<T> {
    pub fn new(left: T, right: T, cells: usize) -> Self {
        assert!(cells >= 1, "grid needs at least one cell");
        UniformGrid {
            left,
            right,
            h: (right - left) / T::of_usize(cells),
            cells,
        }
    }

    pub fn len(&self) -> usize {
        self.cells + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn node(&self, i: usize) -> T {
        if i == self.cells {
            self.right
        } else {
            self.left + T::of_usize(i) * self.h
        }
    }

    pub fn nodes(&self) -> Vec<T> {
        (0..self.len()).map(|i| self.node(i)).collect()
    }
}
