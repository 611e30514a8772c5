use super::{Accumulator, Algorithm, JoinKind, MatrixProfile, ProfileMeta, ProfileParams, REFRESH_ROWS};
use crate::distance::zone_size;
use crate::stats::sq_norms_with_period;
use crate::{Error, MultiTimeSeries, Result};

/// SiMPle: a multivariate join on raw (not z-normalized) Euclidean distance
/// summed over all dimensions, for self-joins and AB-joins.
///
/// Cells are visited diagonal by diagonal with the same O(1) dot-product
/// update as STOMP. Window norms are slid with the identical update and
/// re-anchoring schedule, so a window compared with itself cancels to
/// exactly zero.
pub fn simple(a: &MultiTimeSeries, b: Option<&MultiTimeSeries>, params: &ProfileParams) -> Result<MatrixProfile> {
    params.validate()?;
    let w = params.window;
    let la = a.profile_len(w)?;
    if let Some(b) = b {
        if b.n_dims() != a.n_dims() {
            return Err(Error::param(format!(
                "series A has {} dimensions, series B has {}",
                a.n_dims(),
                b.n_dims()
            )));
        }
        b.profile_len(w)?;
    }
    let self_join = b.is_none();
    let b = b.unwrap_or(a);
    let lb = b.profile_len(w)?;
    let zone = if self_join { zone_size(w, params.exclusion_zone)? } else { 0 };
    let period = REFRESH_ROWS.max(w);
    let d = a.n_dims();

    let xa: Vec<&[f64]> = a.dims().iter().map(|t| t.values()).collect();
    let xb: Vec<&[f64]> = b.dims().iter().map(|t| t.values()).collect();
    let na = xa
        .iter()
        .map(|x| sq_norms_with_period(x, w, period))
        .collect::<Result<Vec<_>>>()?;
    let nb = if self_join {
        na.clone()
    } else {
        xb.iter()
            .map(|x| sq_norms_with_period(x, w, period))
            .collect::<Result<Vec<_>>>()?
    };

    let mut acc = Accumulator::new(la);
    let mut qt = vec![0.0; d];

    // Walks the diagonal starting at (i0, j0); `visit(i, j, d2)` gets each cell.
    let mut walk = |i0: usize, j0: usize, visit: &mut dyn FnMut(usize, usize, f64)| {
        let steps = (la - i0).min(lb - j0);
        for s in 0..steps {
            let (i, j) = (i0 + s, j0 + s);
            let mut d2 = 0.0;
            for k in 0..d {
                let (x, y) = (xa[k], xb[k]);
                if s == 0 || s % period == 0 {
                    qt[k] = x[i..i + w].iter().zip(&y[j..j + w]).map(|(p, q)| p * q).sum();
                } else {
                    qt[k] += x[i + w - 1] * y[j + w - 1] - x[i - 1] * y[j - 1];
                }
                d2 += na[k][i] + nb[k][j] - 2.0 * qt[k];
            }
            visit(i, j, d2.max(0.0));
        }
    };

    if self_join {
        for k in (zone + 1)..la {
            walk(0, k, &mut |i, j, d2| acc.offer_pair(i, j, d2));
        }
    } else {
        for i0 in (1..la).rev() {
            walk(i0, 0, &mut |i, j, d2| acc.offer(i, j, d2));
        }
        for j0 in 0..lb {
            walk(0, j0, &mut |i, j, d2| acc.offer(i, j, d2));
        }
    }

    Ok(acc.finish(
        ProfileMeta {
            window: w,
            exclusion_zone: zone,
            algorithm: Algorithm::Simple,
            join: if self_join { JoinKind::SelfJoin } else { JoinKind::AbJoin },
            coverage: 1.0,
            seed: None,
        },
        false,
    ))
}
