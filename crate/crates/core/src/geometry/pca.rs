use super::{LabeledCloud, PointSet};
use crate::{Error, Result};

/// Result of [`pca_project`].
#[derive(Clone, Debug)]
pub struct Projection {
    pub cloud: LabeledCloud,
    /// Principal directions as unit rows, by descending eigenvalue.
    pub components: Vec<Vec<f64>>,
    /// Every covariance eigenvalue, descending.
    pub eigenvalues: Vec<f64>,
    pub mean: Vec<f64>,
    /// Number of eigenvalues above the numerical-zero threshold.
    pub effective_rank: usize,
}

/// Symmetric eigen-decomposition by cyclic Jacobi rotations.
///
/// `a` is row-major `n × n`. Returns eigenvalues (unordered) and the matching
/// eigenvectors as columns of a row-major matrix.
pub(crate) fn jacobi_eigen(mut a: Vec<f64>, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let total: f64 = a.iter().map(|x| x * x).sum();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q] * a[p * n + q])
            .sum();
        if off <= 1e-30 * total.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i * n + i]).collect(), v)
}

/// Projects a cloud onto its top `m` principal components.
///
/// Components are sign-normalised so that the largest-magnitude entry of each
/// is positive. When the covariance has rank `r < m`, only `r` components are
/// kept and `effective_rank` reports it.
pub fn pca_project(cloud: &LabeledCloud, m: usize) -> Result<Projection> {
    let d = cloud.dim();
    let n = cloud.len();
    if m == 0 || m > d {
        return Err(Error::InvalidInput(format!("cannot keep {m} components of a {d}-dimensional cloud")));
    }
    let pts = cloud.points();
    let mut mean = vec![0.0; d];
    for p in pts.iter() {
        for (acc, x) in mean.iter_mut().zip(p) {
            *acc += x;
        }
    }
    mean.iter_mut().for_each(|x| *x /= n as f64);
    let denom = if n > 1 { (n - 1) as f64 } else { 1.0 };
    let mut cov = vec![0.0; d * d];
    let mut centred = vec![0.0; d];
    for p in pts.iter() {
        for k in 0..d {
            centred[k] = p[k] - mean[k];
        }
        for i in 0..d {
            let ci = centred[i];
            for j in i..d {
                cov[i * d + j] += ci * centred[j];
            }
        }
    }
    for i in 0..d {
        for j in i..d {
            cov[i * d + j] /= denom;
            cov[j * d + i] = cov[i * d + j];
        }
    }

    let (vals, vecs) = jacobi_eigen(cov, d);
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]).then(i.cmp(&j)));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| vals[i]).collect();
    let top = eigenvalues[0].max(0.0);
    let effective_rank = if top == 0.0 {
        0
    } else {
        eigenvalues.iter().filter(|&&l| l > 1e-12 * top).count()
    };
    if effective_rank == 0 {
        return Err(Error::InvalidInput("covariance has rank 0; all points coincide".into()));
    }
    let keep = m.min(effective_rank);
    let components: Vec<Vec<f64>> = order[..keep]
        .iter()
        .map(|&c| {
            let mut col: Vec<f64> = (0..d).map(|r| vecs[r * d + c]).collect();
            let lead = col
                .iter()
                .enumerate()
                .fold((0, 0.0f64), |best, (i, &x)| if x.abs() > best.1.abs() { (i, x) } else { best });
            if lead.1 < 0.0 {
                col.iter_mut().for_each(|x| *x = -*x);
            }
            col
        })
        .collect();

    let mut coords = Vec::with_capacity(n * keep);
    for p in pts.iter() {
        for comp in &components {
            coords.push(comp.iter().zip(p).zip(&mean).map(|((c, x), mu)| c * (x - mu)).sum());
        }
    }
    let projected = LabeledCloud::from_parts_unchecked(PointSet::new(keep, coords)?, cloud.labels().to_vec());
    Ok(Projection {
        cloud: projected,
        components,
        eigenvalues,
        mean,
        effective_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Class;

    fn cloud(rows: &[Vec<f64>]) -> LabeledCloud {
        let labels = (0..rows.len()).map(|i| Class::from_index(i % 2)).collect();
        LabeledCloud::new(PointSet::from_rows(rows).unwrap(), labels).unwrap()
    }

    fn variance(p: &PointSet, axis: usize) -> f64 {
        let n = p.len() as f64;
        let mean: f64 = p.iter().map(|x| x[axis]).sum::<f64>() / n;
        p.iter().map(|x| (x[axis] - mean).powi(2)).sum::<f64>() / (n - 1.0)
    }

    #[test]
    fn line_collapses_onto_one_component() {
        let rows: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64 * 0.3, i as f64 * 0.3]).collect();
        let c = cloud(&rows);
        let proj = pca_project(&c, 1).unwrap();
        let total = variance(c.points(), 0) + variance(c.points(), 1);
        assert!((variance(proj.cloud.points(), 0) - total).abs() < 1e-9);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((proj.components[0][0] - s).abs() < 1e-12 && (proj.components[0][1] - s).abs() < 1e-12);
    }

    #[test]
    fn rank_deficiency_is_reported() {
        let rows: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64, 2.0 * i as f64, 0.0]).collect();
        let proj = pca_project(&cloud(&rows), 3).unwrap();
        assert_eq!(proj.effective_rank, 1);
        assert_eq!(proj.cloud.dim(), 1);
    }

    #[test]
    fn too_many_components_is_an_error() {
        let rows = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        assert!(pca_project(&cloud(&rows), 3).is_err());
        assert!(pca_project(&cloud(&rows), 0).is_err());
    }

    #[test]
    fn jacobi_diagonalises_a_known_matrix() {
        // eigenvalues of [[2,1],[1,2]] are 1 and 3
        let (vals, _) = jacobi_eigen(vec![2.0, 1.0, 1.0, 2.0], 2);
        let mut v = vals.clone();
        v.sort_by(f64::total_cmp);
        assert!((v[0] - 1.0).abs() < 1e-14 && (v[1] - 3.0).abs() < 1e-14);
    }
}
