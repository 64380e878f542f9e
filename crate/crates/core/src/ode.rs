//! Dormand-Prince 8(5,3) stepper (DOP853) for a two-component complex state,
//! with the seventh-order continuous extension used for dense output.
//!
//! Coefficients are those of Hairer's DOP853.

use num_complex::Complex64;

pub(crate) type State = [Complex64; 2];

const ZERO: State = [Complex64 { re: 0.0, im: 0.0 }; 2];
const STAGES: usize = 12;

const C: [f64; 16] = [0.0, 0.05260015195876773, 0.0789002279381516, 0.1183503419072274, 0.2816496580927726, 0.3333333333333333, 0.25, 0.3076923076923077, 0.6512820512820513, 0.6, 0.8571428571428571, 1.0, 1.0, 0.1, 0.2, 0.7777777777777778];
const A: [[f64; 16]; 16] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.05260015195876773, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.0197250569845379, 0.0591751709536137, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.02958758547680685, 0.0, 0.08876275643042054, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.2413651341592667, 0.0, -0.8845494793282861, 0.924834003261792, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.037037037037037035, 0.0, 0.0, 0.17082860872947386, 0.12546768756682242, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.037109375, 0.0, 0.0, 0.17025221101954405, 0.06021653898045596, -0.017578125, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.03709200011850479, 0.0, 0.0, 0.17038392571223998, 0.10726203044637328, -0.015319437748624402, 0.008273789163814023, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.6241109587160757, 0.0, 0.0, -3.3608926294469414, -0.868219346841726, 27.59209969944671, 20.154067550477894, -43.48988418106996, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.47766253643826434, 0.0, 0.0, -2.4881146199716677, -0.590290826836843, 21.230051448181193, 15.279233632882423, -33.28821096898486, -0.020331201708508627, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [-0.9371424300859873, 0.0, 0.0, 5.186372428844064, 1.0914373489967295, -8.149787010746927, -18.52006565999696, 22.739487099350505, 2.4936055526796523, -3.0467644718982196, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [2.273310147516538, 0.0, 0.0, -10.53449546673725, -2.0008720582248625, -17.9589318631188, 27.94888452941996, -2.8589982771350235, -8.87285693353063, 12.360567175794303, 0.6433927460157636, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.054293734116568765, 0.0, 0.0, 0.0, 0.0, 4.450312892752409, 1.8915178993145003, -5.801203960010585, 0.3111643669578199, -0.1521609496625161, 0.20136540080403034, 0.04471061572777259, 0.0, 0.0, 0.0, 0.0],
    [0.056167502283047954, 0.0, 0.0, 0.0, 0.0, 0.0, 0.25350021021662483, -0.2462390374708025, -0.12419142326381637, 0.15329179827876568, 0.00820105229563469, 0.007567897660545699, -0.008298, 0.0, 0.0, 0.0],
    [0.03183464816350214, 0.0, 0.0, 0.0, 0.0, 0.028300909672366776, 0.053541988307438566, -0.05492374857139099, 0.0, 0.0, -0.00010834732869724932, 0.0003825710908356584, -0.00034046500868740456, 0.1413124436746325, 0.0, 0.0],
    [-0.42889630158379194, 0.0, 0.0, 0.0, 0.0, -4.697621415361164, 7.683421196062599, 4.06898981839711, 0.3567271874552811, 0.0, 0.0, 0.0, -0.0013990241651590145, 2.9475147891527724, -9.15095847217987, 0.0],
];
const E3: [f64; 13] = [-0.18980075407240762, 0.0, 0.0, 0.0, 0.0, 4.450312892752409, 1.8915178993145003, -5.801203960010585, -0.4226823213237919, -0.1521609496625161, 0.20136540080403034, 0.02265179219836082, 0.0];
const E5: [f64; 13] = [0.01312004499419488, 0.0, 0.0, 0.0, 0.0, -1.2251564463762044, -0.4957589496572502, 1.6643771824549864, -0.35032884874997366, 0.3341791187130175, 0.08192320648511571, -0.022355307863886294, 0.0];
const D: [[f64; 16]; 4] = [
    [-8.428938276109013, 0.0, 0.0, 0.0, 0.0, 0.5667149535193777, -3.0689499459498917, 2.38466765651207, 2.117034582445028, -0.871391583777973, 2.2404374302607883, 0.6315787787694688, -0.08899033645133331, 18.148505520854727, -9.194632392478356, -4.436036387594894],
    [10.427508642579134, 0.0, 0.0, 0.0, 0.0, 242.28349177525817, 165.20045171727028, -374.5467547226902, -22.113666853125306, 7.733432668472264, -30.674084731089398, -9.332130526430229, 15.697238121770845, -31.139403219565178, -9.35292435884448, 35.81684148639408],
    [19.985053242002433, 0.0, 0.0, 0.0, 0.0, -387.0373087493518, -189.17813819516758, 527.8081592054236, -11.57390253995963, 6.8812326946963, -1.0006050966910838, 0.7777137798053443, -2.778205752353508, -60.19669523126412, 84.32040550667716, 11.99229113618279],
    [-25.69393346270375, 0.0, 0.0, 0.0, 0.0, -154.18974869023643, -231.5293791760455, 357.6391179106141, 93.40532418362432, -37.45832313645163, 104.0996495089623, 29.8402934266605, -43.53345659001114, 96.32455395918828, -39.17726167561544, -149.72683625798564],
];

fn combine(y: &State, k: &[State], coeffs: &[f64], h: f64) -> State {
    let mut out = *y;
    for (c, ks) in coeffs.iter().zip(k) {
        if *c != 0.0 {
            out[0] += ks[0] * (c * h);
            out[1] += ks[1] * (c * h);
        }
    }
    out
}

/// One attempted step. `k[STAGES]` holds `f(t0 + h, y1)`.
pub(crate) struct Step {
    pub t0: f64,
    pub h: f64,
    pub y0: State,
    pub y1: State,
    pub err: f64,
    k: [State; 16],
}

/// Interpolant over one accepted step.
pub(crate) struct Dense {
    t0: f64,
    h: f64,
    y0: State,
    f: [State; 7],
}

impl Step {
    pub fn last_stage(&self) -> State {
        self.k[STAGES]
    }

    /// Build the continuous extension; costs three more right-hand-side calls.
    pub fn dense<F>(&self, f: &F) -> Dense
    where
        F: Fn(f64, &State) -> State,
    {
        let mut k = self.k;
        let h = self.h;
        for s in STAGES + 1..16 {
            let y = combine(&self.y0, &k[..s], &A[s][..s], h);
            k[s] = f(self.t0 + C[s] * h, &y);
        }
        let mut out = [ZERO; 7];
        for i in 0..2 {
            let dy = self.y1[i] - self.y0[i];
            out[0][i] = dy;
            out[1][i] = k[0][i] * h - dy;
            out[2][i] = dy * 2.0 - (k[STAGES][i] + k[0][i]) * h;
        }
        for (row, slot) in D.iter().zip(&mut out[3..]) {
            *slot = combine(&ZERO, &k, row, h);
        }
        Dense {
            t0: self.t0,
            h,
            y0: self.y0,
            f: out,
        }
    }
}

impl Dense {
    pub fn at(&self, t: f64) -> State {
        let x = (t - self.t0) / self.h;
        let mut y = ZERO;
        for (i, f) in self.f.iter().rev().enumerate() {
            let w = if i % 2 == 0 { x } else { 1.0 - x };
            for c in 0..2 {
                y[c] = (y[c] + f[c]) * w;
            }
        }
        [y[0] + self.y0[0], y[1] + self.y0[1]]
    }
}

/// Attempt a step of size `h` from `(t, y)` with first stage `k1 = f(t, y)`.
/// `err` is the scaled error norm; the step is acceptable when it is <= 1.
pub(crate) fn try_step<F>(f: &F, t: f64, y: &State, k1: &State, h: f64, rtol: f64, atol: f64) -> Step
where
    F: Fn(f64, &State) -> State,
{
    let mut k = [ZERO; 16];
    k[0] = *k1;
    for s in 1..STAGES {
        let ys = combine(y, &k[..s], &A[s][..s], h);
        k[s] = f(t + C[s] * h, &ys);
    }
    let y1 = combine(y, &k[..STAGES], &A[STAGES][..STAGES], h);
    k[STAGES] = f(t + h, &y1);

    let e5 = combine(&ZERO, &k[..13], &E5, 1.0);
    let e3 = combine(&ZERO, &k[..13], &E3, 1.0);
    let (mut n5, mut n3) = (0.0, 0.0);
    for i in 0..2 {
        let scale = atol + rtol * y[i].norm().max(y1[i].norm());
        n5 += (e5[i].norm() / scale).powi(2);
        n3 += (e3[i].norm() / scale).powi(2);
    }
    let err = if n5 == 0.0 && n3 == 0.0 {
        0.0
    } else {
        h.abs() * n5 / ((n5 + 0.01 * n3) * 2.0).sqrt()
    };
    Step {
        t0: t,
        h,
        y0: *y,
        y1,
        err,
        k,
    }
}

/// Initial step-size heuristic (Hairer, Nørsett & Wanner, II.4).
pub(crate) fn initial_step<F>(f: &F, t: f64, y: &State, k1: &State, dir: f64, rtol: f64, atol: f64) -> f64
where
    F: Fn(f64, &State) -> State,
{
    let norm = |v: &State| {
        let mut s = 0.0;
        for i in 0..2 {
            s += (v[i].norm() / (atol + rtol * y[i].norm())).powi(2);
        }
        (s / 2.0).sqrt()
    };
    let d0 = norm(y);
    let d1 = norm(k1);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let y1 = combine(y, &[*k1], &[dir], h0);
    let k2 = f(t + dir * h0, &y1);
    let d2 = norm(&[k2[0] - k1[0], k2[1] - k1[1]]) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(1.0 / 8.0)
    };
    (100.0 * h0).min(h1)
}
