use super::{Mat4, MetricSpec, SpacetimePoint, TensorComponents};
use crate::error::{Error, Result};
use crate::tensor::curvature::invert_metric;

const JACOBIAN_TOL: f64 = 1e-10;

/// Contract one slot of `t` with `m`: `out[.., i, ..] = Σ_a m[i][a] t[.., a, ..]`.
fn contract_slot(data: &[f64], rank: usize, slot: usize, m: &Mat4) -> Vec<f64> {
    let stride = 4usize.pow((rank - slot - 1) as u32);
    let mut out = vec![0.0; data.len()];
    for (flat, o) in out.iter_mut().enumerate() {
        let i = (flat / stride) % 4;
        let base = flat - i * stride;
        *o = (0..4).map(|a| m[i][a] * data[base + a * stride]).sum();
    }
    out
}

fn transpose(m: &Mat4) -> Mat4 {
    let mut t = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            t[i][j] = m[j][i];
        }
    }
    t
}

/// Change coordinates `x → y`.
///
/// `jacobian[i][a] = ∂y^i/∂x^a` and `inverse_jacobian[a][i] = ∂x^a/∂y^i`.
/// Contravariant slots pick up the jacobian, covariant slots its inverse.
pub fn transform_tensor(
    t: &TensorComponents,
    jacobian: &Mat4,
    inverse_jacobian: &Mat4,
    target: SpacetimePoint,
) -> Result<TensorComponents> {
    let mut residual: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let p: f64 = (0..4)
                .map(|k| jacobian[i][k] * inverse_jacobian[k][j])
                .sum();
            let delta = if i == j { 1.0 } else { 0.0 };
            residual = residual.max((p - delta).abs());
        }
    }
    if !(residual <= JACOBIAN_TOL) {
        return Err(Error::BadJacobian { residual });
    }
    let rank = t.rank();
    let cov = transpose(inverse_jacobian);
    let mut data = t.data.clone();
    for slot in 0..rank {
        let m = if slot < t.contravariant_rank {
            jacobian
        } else {
            &cov
        };
        data = contract_slot(&data, rank, slot, m);
    }
    Ok(TensorComponents::from_data(
        t.contravariant_rank,
        t.covariant_rank,
        data,
        target,
    ))
}

/// Move storage slot `from` to position `to`, shifting the others.
fn move_slot(data: &[f64], rank: usize, from: usize, to: usize) -> Vec<f64> {
    let mut order: Vec<usize> = (0..rank).filter(|&s| s != from).collect();
    order.insert(to, from);
    let mut out = vec![0.0; data.len()];
    for (flat, v) in data.iter().enumerate() {
        let mut idx = vec![0; rank];
        let mut rest = flat;
        for s in (0..rank).rev() {
            idx[s] = rest % 4;
            rest /= 4;
        }
        let new_flat = order.iter().fold(0, |acc, &s| acc * 4 + idx[s]);
        out[new_flat] = *v;
    }
    out
}

/// Raise covariant slot `slot` (counted among the covariant indices) with
/// `g^{-1}`. The raised index becomes the last contravariant index.
pub fn raise_index(
    t: &TensorComponents,
    m: &dyn MetricSpec,
    slot: usize,
) -> Result<TensorComponents> {
    assert!(slot < t.covariant_rank, "no such covariant slot");
    let g = m.jet_at(&t.point)?.g;
    let ginv = invert_metric(&g, m.scale())?;
    let rank = t.rank();
    let abs = t.contravariant_rank + slot;
    let data = contract_slot(&t.data, rank, abs, &ginv);
    let data = move_slot(&data, rank, abs, t.contravariant_rank);
    Ok(TensorComponents::from_data(
        t.contravariant_rank + 1,
        t.covariant_rank - 1,
        data,
        t.point.clone(),
    ))
}

/// Lower contravariant slot `slot` with `g`. The lowered index becomes the
/// first covariant index.
pub fn lower_index(
    t: &TensorComponents,
    m: &dyn MetricSpec,
    slot: usize,
) -> Result<TensorComponents> {
    assert!(slot < t.contravariant_rank, "no such contravariant slot");
    let g = m.jet_at(&t.point)?.g;
    let rank = t.rank();
    let data = contract_slot(&t.data, rank, slot, &g);
    let data = move_slot(&data, rank, slot, t.contravariant_rank - 1);
    Ok(TensorComponents::from_data(
        t.contravariant_rank - 1,
        t.covariant_rank + 1,
        data,
        t.point.clone(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{Chart, Minkowski};

    fn identity() -> Mat4 {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        m
    }

    fn sample(k: usize, l: usize) -> TensorComponents {
        let p = SpacetimePoint::new(Chart::Cartesian, [0.0; 4]);
        let n = 4usize.pow((k + l) as u32);
        TensorComponents::from_data(k, l, (0..n).map(|i| (i as f64).sin()).collect(), p)
    }

    #[test]
    fn identity_jacobian_is_noop() {
        let t = sample(1, 2);
        let out = transform_tensor(&t, &identity(), &identity(), t.point.clone()).unwrap();
        assert_eq!(out.data, t.data);
        let s = sample(0, 0);
        let out = transform_tensor(&s, &identity(), &identity(), s.point.clone()).unwrap();
        assert_eq!(out.data, s.data);
    }

    #[test]
    fn mismatched_inverse_is_rejected() {
        let mut j = identity();
        j[0][1] = 0.5;
        let t = sample(1, 1);
        assert!(matches!(
            transform_tensor(&t, &j, &identity(), t.point.clone()),
            Err(Error::BadJacobian { .. })
        ));
    }

    #[test]
    fn scaling_acts_per_slot() {
        let mut j = identity();
        let mut ji = identity();
        j[1][1] = 2.0;
        ji[1][1] = 0.5;
        let mut t = TensorComponents::zeros(1, 1, SpacetimePoint::new(Chart::Cartesian, [0.0; 4]));
        t.set(&[1, 1], 3.0);
        t.set(&[1, 2], 5.0);
        t.set(&[2, 1], 7.0);
        let out = transform_tensor(&t, &j, &ji, t.point.clone()).unwrap();
        assert_eq!(out.get(&[1, 1]), 3.0);
        assert_eq!(out.get(&[1, 2]), 10.0);
        assert_eq!(out.get(&[2, 1]), 3.5);
    }

    #[test]
    fn raise_then_lower_round_trips() {
        let m = Minkowski::cartesian();
        let t = sample(0, 2);
        let up = raise_index(&t, &m, 0).unwrap();
        assert_eq!((up.contravariant_rank, up.covariant_rank), (1, 1));
        assert_eq!(up.get(&[0, 1]), -t.get(&[0, 1]));
        let back = lower_index(&up, &m, 0).unwrap();
        assert_eq!(back.data, t.data);
    }
}
