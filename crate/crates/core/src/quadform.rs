//! Quadratic forms: Gram matrices, Sylvester signatures and restrictions to lines.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::multipoly::MultiPoly;
use crate::poly::UniPoly;
use crate::scalar::{Field, FromRational, Rational, RealField, Ring, Sign};

/// Symmetric matrix `M` with `Q(x) = x·M·xᵀ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymQuadraticForm<R> {
    matrix: Matrix<R>,
}

impl<R: Ring> SymQuadraticForm<R> {
    pub fn new(matrix: Matrix<R>) -> Result<Self> {
        if !matrix.is_symmetric() {
            return Err(Error::domain(
                "quadratic form matrix must be square and symmetric",
            ));
        }
        Ok(SymQuadraticForm { matrix })
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn eval(&self, x: &[R]) -> R {
        self.matrix.bilinear(x, x)
    }

    /// Polar form `B(x, y)` with `B(x, x) = Q(x)`.
    pub fn polar(&self, x: &[R], y: &[R]) -> R {
        self.matrix.bilinear(x, y)
    }

    /// Congruence `Aᵀ·M·A`.
    pub fn congruent(&self, a: &Matrix<R>) -> Self {
        SymQuadraticForm {
            matrix: a.transpose().mul(&self.matrix).mul(a),
        }
    }

    pub fn neg(&self) -> Self {
        SymQuadraticForm {
            matrix: self.matrix.map(|x| -x.clone()),
        }
    }

    /// `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        SymQuadraticForm {
            matrix: self.matrix.direct_sum(&other.matrix),
        }
    }
}

/// Counts of positive and negative eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Self {
        Signature { p, q }
    }

    pub fn rank(&self) -> usize {
        self.p + self.q
    }

    pub fn swapped(&self) -> Self {
        Signature {
            p: self.q,
            q: self.p,
        }
    }

    pub fn is_indefinite(&self) -> bool {
        self.p >= 1 && self.q >= 1
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Gram matrix of a quadratic form; cross terms `c·xᵢxⱼ` contribute `c/2` off the diagonal.
pub fn gram_matrix<const N: usize>(
    form: &MultiPoly<Rational, N>,
) -> Result<SymQuadraticForm<Rational>> {
    if !form.is_homogeneous_of_degree(2) {
        return Err(Error::domain(
            "Gram matrix needs a homogeneous quadratic form",
        ));
    }
    let half = Rational::new(1.into(), 2.into());
    let mut m = Matrix::zeros(N, N);
    for (e, c) in form.terms() {
        let idx: Vec<usize> = (0..N)
            .flat_map(|i| std::iter::repeat_n(i, e[i] as usize))
            .collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m.set(i, i, c.clone());
        } else {
            m.set(i, j, c * &half);
            m.set(j, i, c * &half);
        }
    }
    SymQuadraticForm::new(m)
}

/// Re-expands a Gram matrix into a form.
pub fn form_of_matrix<const N: usize>(m: &SymQuadraticForm<Rational>) -> MultiPoly<Rational, N> {
    let mut out = MultiPoly::zero();
    for i in 0..N {
        for j in i..N {
            let mut e = [0; N];
            e[i] += 1;
            e[j] += 1;
            let c = m.matrix().get(i, j).clone();
            out.add_term(
                e,
                if i == j {
                    c
                } else {
                    c * Rational::from_integer(2.into())
                },
            );
        }
    }
    out
}

fn variations<F: RealField>(cs: &[F]) -> usize {
    let mut prev = Sign::Zero;
    let mut n = 0;
    for c in cs {
        let s = c.sign();
        if s == Sign::Zero {
            continue;
        }
        if prev != Sign::Zero && s != prev {
            n += 1;
        }
        prev = s;
    }
    n
}

/// Sylvester signature read off the characteristic polynomial. All eigenvalues of a
/// symmetric matrix are real, so Descartes' rule is exact.
pub fn signature<F: RealField>(form: &SymQuadraticForm<F>) -> Signature {
    let chi = form.matrix().charpoly();
    let k = chi.coeffs().iter().take_while(|c| c.is_zero()).count();
    let stripped: Vec<F> = chi.coeffs()[k..].to_vec();
    let p = variations(&stripped);
    let reflected: Vec<F> = stripped
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
        .collect();
    let q = variations(&reflected);
    Signature { p, q }
}

/// A binary form `Σ cᵢ·xⁱ·y^(n-i)` stored as the polynomial in `x` at `y = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm<R> {
    pub degree: usize,
    pub poly: UniPoly<R>,
}

impl<R: Ring> BinaryForm<R> {
    pub fn new(degree: usize, poly: UniPoly<R>) -> Self {
        assert!(
            poly.coeffs().len() <= degree + 1,
            "binary form degree too small"
        );
        BinaryForm { degree, poly }
    }

    pub fn coeff(&self, i: usize) -> R {
        self.poly.coeff(i)
    }

    pub fn eval(&self, x: &R, y: &R) -> R {
        self.poly.eval_homogeneous(self.degree, x, y)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Multiplicity of the root `(1 : 0)`, i.e. `degree - deg(poly)`.
    pub fn multiplicity_at_infinity(&self) -> usize {
        match self.poly.degree() {
            Some(d) => self.degree - d,
            None => self.degree,
        }
    }
}

/// A projective line in P² given by a linear form, with a fixed parametrisation
/// `(x : y) ↦ x·p + y·q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineParam<R> {
    pub coeffs: [R; 3],
    pub p: [R; 3],
    pub q: [R; 3],
}

impl<F: Field> LineParam<F> {
    /// Parametrises `V(a·u + b·v + c·w)` by a kernel basis of `(a, b, c)`.
    pub fn from_linear_form(coeffs: [F; 3]) -> Result<Self> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::domain("the zero linear form defines no line"));
        }
        let row = Matrix::from_rows(vec![coeffs.to_vec()]);
        let ker = row.nullspace();
        let p: [F; 3] = std::array::from_fn(|i| ker[0][i].clone());
        let q: [F; 3] = std::array::from_fn(|i| ker[1][i].clone());
        Ok(LineParam { coeffs, p, q })
    }

    /// The line through two points.
    pub fn through(p: [F; 3], q: [F; 3]) -> Result<Self> {
        let cross = [
            p[1].clone() * q[2].clone() - p[2].clone() * q[1].clone(),
            p[2].clone() * q[0].clone() - p[0].clone() * q[2].clone(),
            p[0].clone() * q[1].clone() - p[1].clone() * q[0].clone(),
        ];
        if cross.iter().all(|c| c.is_zero()) {
            return Err(Error::domain("points do not span a line"));
        }
        Ok(LineParam {
            coeffs: cross,
            p,
            q,
        })
    }

    pub fn point(&self, x: &F, y: &F) -> [F; 3] {
        std::array::from_fn(|i| x.clone() * self.p[i].clone() + y.clone() * self.q[i].clone())
    }
}

/// `Q(x·p + y·q)` as a binary quadratic form.
pub fn restrict_to_line<F: Field>(
    form: &SymQuadraticForm<F>,
    line: &LineParam<F>,
) -> BinaryForm<F> {
    let a = form.eval(&line.p);
    let b = form.polar(&line.p, &line.q);
    let c = form.eval(&line.q);
    BinaryForm::new(2, UniPoly::new(vec![c, b.clone() + b, a]))
}

/// Restriction of a ternary polynomial of degree `n` to a parametrised line.
pub fn restrict_poly_to_line<F: Field + FromRational>(
    f: &MultiPoly<Rational, 3>,
    n: usize,
    line: &LineParam<F>,
) -> BinaryForm<F> {
    let xs: [UniPoly<F>; 3] =
        std::array::from_fn(|i| UniPoly::new(vec![line.q[i].clone(), line.p[i].clone()]));
    let g = f.eval_with(&xs, |c| UniPoly::constant(F::from_rational(c)));
    BinaryForm::new(n, g)
}
