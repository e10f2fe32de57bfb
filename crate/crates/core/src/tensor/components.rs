use super::SpacetimePoint;

/// Components of a rank-(k,l) tensor at a point.
///
/// Storage is row-major over the `k + l` indices, contravariant indices
/// first: `T^{a b}_{c}` lives at `((a * 4) + b) * 4 + c`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorComponents {
    pub contravariant_rank: usize,
    pub covariant_rank: usize,
    pub data: Vec<f64>,
    pub point: SpacetimePoint,
}

impl TensorComponents {
    pub fn zeros(contravariant_rank: usize, covariant_rank: usize, point: SpacetimePoint) -> Self {
        let len = 4usize.pow((contravariant_rank + covariant_rank) as u32);
        Self {
            contravariant_rank,
            covariant_rank,
            data: vec![0.0; len],
            point,
        }
    }

    pub fn from_data(
        contravariant_rank: usize,
        covariant_rank: usize,
        data: Vec<f64>,
        point: SpacetimePoint,
    ) -> Self {
        assert_eq!(
            data.len(),
            4usize.pow((contravariant_rank + covariant_rank) as u32),
            "component count must be 4^(k+l)"
        );
        Self {
            contravariant_rank,
            covariant_rank,
            data,
            point,
        }
    }

    pub fn scalar(value: f64, point: SpacetimePoint) -> Self {
        Self::from_data(0, 0, vec![value], point)
    }

    pub fn from_mat(contravariant_rank: usize, m: &[[f64; 4]; 4], point: SpacetimePoint) -> Self {
        assert!(contravariant_rank <= 2);
        let data = m.iter().flat_map(|row| row.iter().copied()).collect();
        Self::from_data(contravariant_rank, 2 - contravariant_rank, data, point)
    }

    pub fn from_rank3(
        contravariant_rank: usize,
        t: &[[[f64; 4]; 4]; 4],
        point: SpacetimePoint,
    ) -> Self {
        let data = t.iter().flatten().flatten().copied().collect();
        Self::from_data(contravariant_rank, 3 - contravariant_rank, data, point)
    }

    pub fn from_rank4(
        contravariant_rank: usize,
        t: &[[[[f64; 4]; 4]; 4]; 4],
        point: SpacetimePoint,
    ) -> Self {
        let data = t.iter().flatten().flatten().flatten().copied().collect();
        Self::from_data(contravariant_rank, 4 - contravariant_rank, data, point)
    }

    pub fn rank(&self) -> usize {
        self.contravariant_rank + self.covariant_rank
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.rank(), "wrong number of indices");
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < 4);
            acc * 4 + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: f64) {
        let o = self.offset(idx);
        self.data[o] = value;
    }

    /// Rank-2 view as a 4×4 array.
    pub fn as_mat(&self) -> [[f64; 4]; 4] {
        assert_eq!(self.rank(), 2);
        let mut m = [[0.0; 4]; 4];
        for (i, v) in self.data.iter().enumerate() {
            m[i / 4][i % 4] = *v;
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| *v == 0.0)
    }
}

/// Iterate over every multi-index of the given rank.
pub fn multi_indices(rank: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = 4usize.pow(rank as u32);
    (0..total).map(move |mut flat| {
        let mut idx = vec![0; rank];
        for slot in (0..rank).rev() {
            idx[slot] = flat % 4;
            flat /= 4;
        }
        idx
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Chart;

    #[test]
    fn offsets_are_row_major() {
        let p = SpacetimePoint::new(Chart::Cartesian, [0.0; 4]);
        let mut t = TensorComponents::zeros(1, 2, p);
        t.set(&[1, 2, 3], 7.0);
        assert_eq!(t.data[16 + 2 * 4 + 3], 7.0);
        assert_eq!(t.get(&[1, 2, 3]), 7.0);
        assert_eq!(multi_indices(3).count(), 64);
        assert_eq!(multi_indices(0).count(), 1);
    }
}
