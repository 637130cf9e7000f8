/// Minimizes `f` with the Nelder–Mead simplex method (standard reflection,
/// expansion, contraction and shrink coefficients 1, 2, 1/2, 1/2).
///
/// `f` may return `+inf` outside its domain. Returns the best vertex seen and
/// its value.
pub fn nelder_mead<F>(f: F, x0: &[f64], step: &[f64], iterations: usize) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
{
    let d = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..d {
        let mut x = x0.to_vec();
        x[i] += step[i];
        let v = f(&x);
        simplex.push((x, v));
    }
    let order = |s: &mut Vec<(Vec<f64>, f64)>| {
        s.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
    };
    let lerp = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
    };

    for _ in 0..iterations {
        order(&mut simplex);
        let worst = simplex[d].clone();
        let mut centroid = vec![0.0; d];
        for (x, _) in &simplex[..d] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / d as f64;
            }
        }
        let refl = lerp(&centroid, &worst.0, -1.0);
        let fr = f(&refl);
        if fr < simplex[0].1 {
            let exp = lerp(&centroid, &worst.0, -2.0);
            let fe = f(&exp);
            simplex[d] = if fe < fr { (exp, fe) } else { (refl, fr) };
        } else if fr < simplex[d - 1].1 {
            simplex[d] = (refl, fr);
        } else {
            let con = lerp(&centroid, &worst.0, 0.5);
            let fc = f(&con);
            if fc < worst.1 {
                simplex[d] = (con, fc);
            } else {
                let best = simplex[0].0.clone();
                for (x, v) in simplex.iter_mut().skip(1) {
                    *x = lerp(&best, x, 0.5);
                    *v = f(x);
                }
            }
        }
    }
    order(&mut simplex);
    let (x, v) = simplex.swap_remove(0);
    (x, v)
}
