//! Small numerical kernels shared by the field evaluation and the quadrature.

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for v in iter {
            s.add(v);
        }
        s
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

// 15-point Kronrod abscissae on [-1, 1] (positive half, descending) with the
// embedded 7-point Gauss rule at the odd positions.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Gauss–Kronrod 7/15 pair expanded to the full 15 nodes on [-1, 1].
#[derive(Debug, Clone)]
pub struct KronrodRule {
    pub nodes: [f64; 15],
    pub kronrod: [f64; 15],
    /// Gauss weights on the same nodes (zero where the node is Kronrod-only).
    pub gauss: [f64; 15],
}

impl KronrodRule {
    pub fn new() -> Self {
        let mut nodes = [0.0; 15];
        let mut kronrod = [0.0; 15];
        let mut gauss = [0.0; 15];
        for j in 0..7 {
            nodes[j] = -XGK[j];
            nodes[14 - j] = XGK[j];
            kronrod[j] = WGK[j];
            kronrod[14 - j] = WGK[j];
            if j % 2 == 1 {
                gauss[j] = WG[j / 2];
                gauss[14 - j] = WG[j / 2];
            }
        }
        nodes[7] = 0.0;
        kronrod[7] = WGK[7];
        gauss[7] = WG[3];
        Self {
            nodes,
            kronrod,
            gauss,
        }
    }
}

impl Default for KronrodRule {
    fn default() -> Self {
        Self::new()
    }
}

/// Adaptive 1-D Gauss–Kronrod integration on [a, b]; returns (value, error).
pub fn integrate_1d<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> (f64, f64) {
    let rule = KronrodRule::new();
    let eval = |lo: f64, hi: f64| {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let (mut k, mut g) = (0.0, 0.0);
        for j in 0..15 {
            let v = f(mid + half * rule.nodes[j]);
            k += rule.kronrod[j] * v;
            g += rule.gauss[j] * v;
        }
        (k * half, ((k - g) * half).abs())
    };
    let mut intervals = vec![(a, b, eval(a, b))];
    for _ in 0..2000 {
        let total: f64 = intervals.iter().map(|iv| iv.2 .0).sum();
        let err: f64 = intervals.iter().map(|iv| iv.2 .1).sum();
        if err <= (rel_tol * total.abs()).max(abs_tol) {
            break;
        }
        let (worst, _) = intervals
            .iter()
            .enumerate()
            .fold((0, -1.0), |acc, (i, iv)| if iv.2 .1 > acc.1 { (i, iv.2 .1) } else { acc });
        let (lo, hi, _) = intervals.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        intervals.push((lo, mid, eval(lo, mid)));
        intervals.push((mid, hi, eval(mid, hi)));
    }
    intervals.sort_by(|x, y| x.0.total_cmp(&y.0));
    let value = compensated_sum(intervals.iter().map(|iv| iv.2 .0));
    let err = intervals.iter().map(|iv| iv.2 .1).sum();
    (value, err)
}

/// Least-squares slope of log(err) against log(h): the observed convergence order.
pub fn observed_order(steps: &[f64], errors: &[f64]) -> f64 {
    let n = steps.len() as f64;
    let xs: Vec<f64> = steps.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_weights_sum_to_two() {
        let rule = KronrodRule::new();
        let k: f64 = rule.kronrod.iter().sum();
        let g: f64 = rule.gauss.iter().sum();
        assert!((k - 2.0).abs() < 1e-14);
        assert!((g - 2.0).abs() < 1e-14);
    }

    #[test]
    fn kronrod_is_exact_for_degree_22() {
        let rule = KronrodRule::new();
        let v: f64 = (0..15).map(|j| rule.kronrod[j] * rule.nodes[j].powi(22)).sum();
        assert!((v - 2.0 / 23.0).abs() < 1e-14);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::new();
        s.add(1.0);
        for _ in 0..10 {
            s.add(1e-17);
        }
        assert!((s.value() - (1.0 + 1e-16)).abs() < 1e-18);
    }

    #[test]
    fn adaptive_1d_handles_sqrt() {
        let (v, e) = integrate_1d(|x| x.sqrt(), 0.0, 1.0, 1e-12, 1e-14);
        assert!((v - 2.0 / 3.0).abs() < 1e-10, "{v} {e}");
    }

    #[test]
    fn observed_order_of_pure_power() {
        let h = [1e-2, 5e-3, 2.5e-3];
        let e: Vec<f64> = h.iter().map(|h| 3.0 * h * h).collect();
        assert!((observed_order(&h, &e) - 2.0).abs() < 1e-12);
    }
}
