//! A small deterministic Nelder-Mead simplex optimizer. Reductions and
//! tie-breaks are index-ordered, so identical inputs give identical outputs.

#[derive(Debug, Clone)]
pub struct NelderMead {
    pub ftol: f64,
    pub xtol: f64,
    pub max_iter: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            ftol: 1e-10,
            xtol: 1e-12,
            max_iter: 2000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptimResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl NelderMead {
    /// Maximizes `f` starting from `x0`, with initial simplex step `scale`.
    pub fn maximize<F: FnMut(&[f64]) -> f64>(
        &self,
        mut f: F,
        x0: &[f64],
        scale: f64,
    ) -> OptimResult {
        let n = x0.len();
        if n == 0 {
            let value = f(x0);
            return OptimResult {
                x: vec![],
                value,
                iterations: 0,
                converged: true,
            };
        }
        // vertices of the initial simplex
        let mut pts: Vec<Vec<f64>> = vec![x0.to_vec()];
        for i in 0..n {
            let mut p = x0.to_vec();
            p[i] += scale;
            pts.push(p);
        }
        let mut vals: Vec<f64> = pts.iter().map(|p| f(p)).collect();

        let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
        let mut iterations = 0;
        let mut converged = false;
        while iterations < self.max_iter {
            iterations += 1;
            // order best..worst (maximization: descending value, index-stable)
            let mut order: Vec<usize> = (0..=n).collect();
            order.sort_by(|&a, &b| vals[b].total_cmp(&vals[a]).then(a.cmp(&b)));
            let best = order[0];
            let worst = order[n];
            let second_worst = order[n - 1];

            let spread = (vals[best] - vals[worst]).abs();
            let diam = pts
                .iter()
                .map(|p| {
                    p.iter()
                        .zip(&pts[best])
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0, f64::max)
                })
                .fold(0.0, f64::max);
            if spread <= self.ftol * (1.0 + vals[best].abs()) && diam <= self.xtol.max(1e-14) {
                converged = true;
                break;
            }

            // centroid of all but the worst
            let mut centroid = vec![0.0; n];
            for (i, p) in pts.iter().enumerate() {
                if i != worst {
                    for j in 0..n {
                        centroid[j] += p[j] / n as f64;
                    }
                }
            }

            let lerp = |a: &[f64], b: &[f64], w: f64| -> Vec<f64> {
                a.iter().zip(b).map(|(x, y)| x + w * (y - x)).collect()
            };

            // reflect the worst point through the centroid
            let reflected = lerp(&centroid, &pts[worst], -alpha);
            let fr = f(&reflected);
            if fr > vals[second_worst] && fr <= vals[best] {
                pts[worst] = reflected;
                vals[worst] = fr;
                continue;
            }
            if fr > vals[best] {
                let expanded = lerp(&centroid, &pts[worst], -gamma);
                let fe = f(&expanded);
                if fe > fr {
                    pts[worst] = expanded;
                    vals[worst] = fe;
                } else {
                    pts[worst] = reflected;
                    vals[worst] = fr;
                }
                continue;
            }
            // contract: outside toward the reflected point when it improved on
            // the worst vertex, inside toward the worst vertex otherwise
            let outside = fr > vals[worst];
            let contracted = if outside {
                lerp(&centroid, &reflected, rho)
            } else {
                lerp(&centroid, &pts[worst], rho)
            };
            let fc = f(&contracted);
            let accept = if outside { fc >= fr } else { fc > vals[worst] };
            if accept {
                pts[worst] = contracted;
                vals[worst] = fc;
                continue;
            }
            // shrink toward the best vertex
            let best_pt = pts[best].clone();
            for (i, p) in pts.iter_mut().enumerate() {
                if i != best {
                    *p = lerp(&best_pt, p, sigma);
                }
            }
            for (i, p) in pts.iter().enumerate() {
                if i != best {
                    vals[i] = f(p);
                }
            }
        }

        let best = (0..=n)
            .max_by(|&a, &b| vals[a].total_cmp(&vals[b]).then(b.cmp(&a)))
            .unwrap();
        OptimResult {
            x: pts[best].clone(),
            value: vals[best],
            iterations,
            converged,
        }
    }
}
