//! JSON encodings of field elements, automorphisms, loops, affine elements and
//! invariants. Integers are written as decimal strings so no precision is lost.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::affine::AffineElement;
use crate::automorphism::{named, FiniteAutomorphism};
use crate::catalog;
use crate::classification::Invariant;
use crate::error::{Error, Result};
use crate::expcurve::ExpCurveData;
use crate::field::{CyclotomicNumber, Rational};
use crate::invariants::{self, FirstKindInvariant, SecondKindInvariant};
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, Vector};
use crate::loops::{LoopElement, TwistContext};
use crate::standard::StandardAutomorphism;

/// `{"level": L, "coords": [["num", "den"], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberJson {
    pub level: IntJson,
    pub coords: Vec<[String; 2]>,
}

/// An integer given either as a JSON number or a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntJson {
    Number(i64),
    Text(String),
}

impl IntJson {
    pub fn value(&self) -> Result<i64> {
        match self {
            IntJson::Number(n) => Ok(*n),
            IntJson::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("`{s}` is not an integer"))),
        }
    }

    pub fn unsigned(&self) -> Result<u64> {
        u64::try_from(self.value()?).map_err(|_| Error::InvalidInput("expected a non-negative integer".into()))
    }
}

impl From<i64> for IntJson {
    fn from(n: i64) -> IntJson {
        IntJson::Text(n.to_string())
    }
}

/// A named automorphism (`"mu"`, `"rot3_1"`, ...) or an explicit matrix in the algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AutomorphismJson {
    Named(String),
    Matrix {
        matrix: Vec<Vec<NumberJson>>,
        #[serde(default)]
        antilinear: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextJson {
    pub sigma: AutomorphismJson,
    #[serde(rename = "D")]
    pub denominator: IntJson,
}

/// Curve `t -> e^{t ad X}`: the generator `X` and the values `q` with `ad X = i q` on its eigenspaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub generator: Vec<NumberJson>,
    pub eigenvalues: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardJson {
    pub algebra: String,
    pub source: ContextJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<ContextJson>,
    pub epsilon: IntJson,
    pub shift: String,
    pub base: AutomorphismJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub k: IntJson,
    pub coeff: Vec<NumberJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopJson {
    pub algebra: String,
    pub context: ContextJson,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineJson {
    #[serde(rename = "loop")]
    pub loop_part: LoopJson,
    pub c: NumberJson,
    pub d: NumberJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InvariantJson {
    First {
        algebra: String,
        q: IntJson,
        p: IntJson,
        rho: String,
        beta: String,
        /// Derived on output; ignored on input.
        #[serde(default)]
        label: String,
    },
    Second {
        algebra: String,
        plus: AutomorphismJson,
        minus: AutomorphismJson,
        #[serde(default)]
        label: String,
    },
}

/// Encoder and decoder with an optional fixed field level for all output numbers.
#[derive(Clone, Copy, Debug, Default)]
pub struct Codec {
    pub level: Option<u64>,
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| Error::InvalidInput(format!("`{s}` is not a rational number")))
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| Error::InvalidInput(format!("`{s}` is not an integer")))
}

pub fn rational_string(q: &Rational) -> String {
    q.to_string()
}

impl Codec {
    pub fn new(level: Option<u64>) -> Result<Codec> {
        if let Some(l) = level {
            if l == 0 || l % 4 != 0 {
                return Err(Error::InvalidInput(format!("field level {l} is not a positive multiple of 4")));
            }
        }
        Ok(Codec { level })
    }

    pub fn encode_number(&self, x: &CyclotomicNumber) -> Result<NumberJson> {
        let x = match self.level {
            Some(l) => x.lift(l)?,
            None => x.clone(),
        };
        Ok(NumberJson {
            level: IntJson::Text(x.level().to_string()),
            coords: x
                .coords()
                .iter()
                .map(|c| [c.numer().to_string(), c.denom().to_string()])
                .collect(),
        })
    }

    pub fn decode_number(&self, j: &NumberJson) -> Result<CyclotomicNumber> {
        let coords = j
            .coords
            .iter()
            .map(|[n, d]| {
                let d = parse_bigint(d)?;
                if d == BigInt::from(0) {
                    return Err(Error::DivisionByZero);
                }
                Ok(Rational::new(parse_bigint(n)?, d))
            })
            .collect::<Result<Vec<_>>>()?;
        let x = CyclotomicNumber::from_coords(j.level.unsigned()?, coords)?;
        match self.level {
            Some(l) => x.lift(l),
            None => Ok(x),
        }
    }

    pub fn encode_vector(&self, v: &[CyclotomicNumber]) -> Result<Vec<NumberJson>> {
        v.iter().map(|x| self.encode_number(x)).collect()
    }

    pub fn decode_vector(&self, algebra: &LieAlgebra, v: &[NumberJson]) -> Result<Vector> {
        if v.len() != algebra.dim() {
            return Err(Error::InvalidInput(format!(
                "expected {} coordinates for {}, got {}",
                algebra.dim(),
                algebra.name(),
                v.len()
            )));
        }
        v.iter().map(|x| self.decode_number(x)).collect()
    }

    /// Catalog identifiers where possible, otherwise the matrix.
    pub fn encode_automorphism(&self, a: &FiniteAutomorphism) -> Result<AutomorphismJson> {
        if !a.is_antilinear() {
            for name in ["id", "mu", "tau", "theta"] {
                if named(a.algebra(), name).is_ok_and(|b| &b == a) {
                    return Ok(AutomorphismJson::Named(name.into()));
                }
            }
        }
        if a.is_antilinear() && named(a.algebra(), "omega").is_ok_and(|b| &b == a) {
            return Ok(AutomorphismJson::Named("omega".into()));
        }
        let m = a.matrix();
        let matrix = (0..m.rows())
            .map(|i| self.encode_vector(m.row(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(AutomorphismJson::Matrix {
            matrix,
            antilinear: a.is_antilinear(),
        })
    }

    pub fn decode_automorphism(&self, algebra: &Arc<LieAlgebra>, j: &AutomorphismJson) -> Result<FiniteAutomorphism> {
        match j {
            AutomorphismJson::Named(name) => match named(algebra, name) {
                Ok(a) => Ok(a),
                Err(_) => catalog::lookup(algebra, name).map(|e| e.automorphism),
            },
            AutomorphismJson::Matrix { matrix, antilinear } => {
                let n = algebra.dim();
                if matrix.len() != n {
                    return Err(Error::InvalidInput(format!("automorphism matrix must have {n} rows")));
                }
                let rows = matrix
                    .iter()
                    .map(|r| self.decode_vector(algebra, r))
                    .collect::<Result<Vec<_>>>()?;
                FiniteAutomorphism::checked(algebra.clone(), Matrix::from_rows(rows), *antilinear)
            }
        }
    }

    pub fn encode_context(&self, ctx: &TwistContext) -> Result<ContextJson> {
        Ok(ContextJson {
            sigma: self.encode_automorphism(ctx.sigma())?,
            denominator: (ctx.denominator() as i64).into(),
        })
    }

    pub fn decode_context(&self, algebra: &Arc<LieAlgebra>, j: &ContextJson) -> Result<Arc<TwistContext>> {
        let sigma = self.decode_automorphism(algebra, &j.sigma)?;
        TwistContext::new(sigma, j.denominator.unsigned()?)
    }

    pub fn encode_standard(&self, phi: &StandardAutomorphism) -> Result<StandardJson> {
        let target = if phi.target() == phi.source() {
            None
        } else {
            Some(self.encode_context(phi.target())?)
        };
        let curve = phi
            .curve()
            .map(|c| -> Result<CurveJson> {
                Ok(CurveJson {
                    generator: self.encode_vector(c.generator())?,
                    eigenvalues: c.eigenpairs().iter().map(|(q, _)| rational_string(q)).collect(),
                })
            })
            .transpose()?;
        Ok(StandardJson {
            algebra: phi.source().algebra().name().into(),
            source: self.encode_context(phi.source())?,
            target,
            epsilon: phi.epsilon().into(),
            shift: rational_string(phi.shift()),
            base: self.encode_automorphism(phi.base())?,
            curve,
        })
    }

    pub fn decode_standard(&self, j: &StandardJson) -> Result<StandardAutomorphism> {
        let algebra = LieAlgebra::builtin_arc(&j.algebra)?;
        let source = self.decode_context(&algebra, &j.source)?;
        let target = match &j.target {
            Some(t) => self.decode_context(&algebra, t)?,
            None => source.clone(),
        };
        let curve = j
            .curve
            .as_ref()
            .map(|c| -> Result<ExpCurveData> {
                let x = self.decode_vector(&algebra, &c.generator)?;
                let qs = c
                    .eigenvalues
                    .iter()
                    .map(|q| parse_rational(q))
                    .collect::<Result<Vec<_>>>()?;
                ExpCurveData::from_generator(&algebra, x, &qs)
            })
            .transpose()?;
        StandardAutomorphism::new(
            j.epsilon.value()?,
            parse_rational(&j.shift)?,
            self.decode_automorphism(&algebra, &j.base)?,
            curve,
            &source,
            &target,
        )
    }

    pub fn encode_loop(&self, u: &LoopElement) -> Result<LoopJson> {
        Ok(LoopJson {
            algebra: u.context().algebra().name().into(),
            context: self.encode_context(u.context())?,
            terms: u
                .terms()
                .iter()
                .map(|(k, v)| -> Result<TermJson> {
                    Ok(TermJson {
                        k: (*k).into(),
                        coeff: self.encode_vector(v)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        })
    }

    pub fn decode_loop(&self, j: &LoopJson) -> Result<LoopElement> {
        let algebra = LieAlgebra::builtin_arc(&j.algebra)?;
        let ctx = self.decode_context(&algebra, &j.context)?;
        let mut terms: BTreeMap<i64, Vector> = BTreeMap::new();
        for t in &j.terms {
            let k = t.k.value()?;
            if terms.insert(k, self.decode_vector(&algebra, &t.coeff)?).is_some() {
                return Err(Error::InvalidInput(format!("exponent {k} appears twice")));
            }
        }
        LoopElement::checked(&ctx, terms)
    }

    pub fn encode_affine(&self, x: &AffineElement) -> Result<AffineJson> {
        Ok(AffineJson {
            loop_part: self.encode_loop(&x.loop_part)?,
            c: self.encode_number(&x.c)?,
            d: self.encode_number(&x.d)?,
        })
    }

    pub fn decode_affine(&self, j: &AffineJson) -> Result<AffineElement> {
        Ok(AffineElement::new(
            self.decode_loop(&j.loop_part)?,
            self.decode_number(&j.c)?,
            self.decode_number(&j.d)?,
        ))
    }

    pub fn encode_invariant(&self, algebra: &LieAlgebra, inv: &Invariant) -> Result<InvariantJson> {
        Ok(match inv {
            Invariant::First(a) => InvariantJson::First {
                algebra: algebra.name().into(),
                q: i64::from(a.q).into(),
                p: i64::from(a.p).into(),
                rho: a.rho.clone(),
                beta: a.beta.clone(),
                label: a.to_string(),
            },
            Invariant::Second(b) => {
                let (plus, minus) = match b.involution_labels() {
                    Some((p, m)) => (AutomorphismJson::Named(p), AutomorphismJson::Named(m)),
                    None => (self.encode_automorphism(&b.plus)?, self.encode_automorphism(&b.minus)?),
                };
                InvariantJson::Second {
                    algebra: algebra.name().into(),
                    plus,
                    minus,
                    label: b.to_string(),
                }
            }
        })
    }

    /// The invariant together with its algebra.
    pub fn decode_invariant(&self, j: &InvariantJson) -> Result<(Arc<LieAlgebra>, Invariant)> {
        match j {
            InvariantJson::First { algebra, q, p, rho, beta, .. } => {
                let small = |x: &IntJson| -> Result<u32> {
                    u32::try_from(x.value()?).map_err(|_| Error::InvalidInput("expected a small non-negative integer".into()))
                };
                let inv = FirstKindInvariant {
                    q: small(q)?,
                    p: small(p)?,
                    rho: rho.clone(),
                    beta: beta.clone(),
                };
                Ok((LieAlgebra::builtin_arc(algebra)?, Invariant::First(inv)))
            }
            InvariantJson::Second { algebra, plus, minus, .. } => {
                let g = LieAlgebra::builtin_arc(algebra)?;
                let inv = SecondKindInvariant {
                    plus: self.decode_automorphism(&g, plus)?,
                    minus: self.decode_automorphism(&g, minus)?,
                };
                Ok((g, Invariant::Second(inv)))
            }
        }
    }
}

/// A standard automorphism realizing an invariant.
pub fn realize(algebra: &Arc<LieAlgebra>, inv: &Invariant) -> Result<StandardAutomorphism> {
    match inv {
        Invariant::First(a) => invariants::realize_first_invariant(algebra, a),
        Invariant::Second(b) => invariants::realize_second(&b.plus, &b.minus),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::lie::half_i_h;

    fn sl2() -> Arc<LieAlgebra> {
        LieAlgebra::builtin_arc("sl2C").unwrap()
    }

    #[test]
    fn number_round_trip() {
        let codec = Codec::default();
        let x = &CyclotomicNumber::zeta_power(12, 5) + &CyclotomicNumber::from(rat(-7, 3));
        let j = codec.encode_number(&x).unwrap();
        assert_eq!(j.level.unsigned().unwrap(), 12);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"-7\""));
        let back: NumberJson = serde_json::from_str(&text).unwrap();
        assert_eq!(codec.decode_number(&back).unwrap(), x);
    }

    #[test]
    fn fixed_level_lifts() {
        let codec = Codec::new(Some(24)).unwrap();
        let j = codec.encode_number(&CyclotomicNumber::i()).unwrap();
        assert_eq!(j.level.unsigned().unwrap(), 24);
        assert!(Codec::new(Some(6)).is_err());
        assert!(codec.encode_number(&CyclotomicNumber::zeta_power(5, 1)).is_err());
    }

    #[test]
    fn rejects_bad_numbers() {
        let codec = Codec::default();
        let bad = NumberJson {
            level: 4.into(),
            coords: vec![["1".into(), "0".into()], ["0".into(), "1".into()]],
        };
        assert!(codec.decode_number(&bad).is_err());
        let short = NumberJson {
            level: IntJson::Number(8),
            coords: vec![["1".into(), "1".into()]],
        };
        assert!(codec.decode_number(&short).is_err());
    }

    #[test]
    fn standard_round_trip() {
        let g = sl2();
        let codec = Codec::default();
        let inv = FirstKindInvariant {
            q: 6,
            p: 3,
            rho: "rot3_1".into(),
            beta: "id".into(),
        };
        let phi = invariants::realize_first_invariant(&g, &inv).unwrap();
        let j = codec.encode_standard(&phi).unwrap();
        let text = serde_json::to_string(&j).unwrap();
        let back = codec.decode_standard(&serde_json::from_str(&text).unwrap()).unwrap();
        assert!(back.agrees_on(&phi, 3));

        let ctx = TwistContext::untwisted(&g, 1).unwrap();
        let curve = ExpCurveData::from_generator(&g, half_i_h(), &[rat(-1, 1), rat(0, 1), rat(1, 1)]).unwrap();
        let psi = StandardAutomorphism::exp_curve_map(&ctx, curve, 2).unwrap();
        let j = codec.encode_standard(&psi).unwrap();
        assert!(j.curve.is_some() && j.target.is_some());
        assert!(codec.decode_standard(&j).unwrap().agrees_on(&psi, 3));
    }

    #[test]
    fn loop_and_affine_round_trip() {
        let g = sl2();
        let codec = Codec::default();
        let ctx = TwistContext::new(named(&g, "mu").unwrap(), 2).unwrap();
        let u = LoopElement::spanning_set(&ctx, 2)
            .into_iter()
            .fold(LoopElement::zero(&ctx), |a, b| a.add(&b).unwrap());
        let x = AffineElement::new(u, CyclotomicNumber::i(), CyclotomicNumber::from_integer(3));
        let j = codec.encode_affine(&x).unwrap();
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"loop\""));
        assert_eq!(codec.decode_affine(&serde_json::from_str(&text).unwrap()).unwrap(), x);
        // a coefficient that breaks the twist condition is rejected
        let mut bad = j.loop_part.clone();
        bad.terms[0].coeff = codec.encode_vector(&[1.into(), 0.into(), 0.into()]).unwrap();
        bad.terms[0].k = 0.into();
        assert!(codec.decode_loop(&bad).is_err());
    }

    #[test]
    fn invariant_round_trip() {
        let g = sl2();
        let codec = Codec::default();
        let inv = Invariant::First(FirstKindInvariant {
            q: 2,
            p: 0,
            rho: "mu".into(),
            beta: "tau".into(),
        });
        let j = codec.encode_invariant(&g, &inv).unwrap();
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"kind\":\"first\"") && text.contains("(0,mu,[tau])"));
        let (g2, back) = codec.decode_invariant(&serde_json::from_str(&text).unwrap()).unwrap();
        assert!(back.equivalent(&inv).unwrap());
        let phi = realize(&g2, &back).unwrap();
        assert!(Invariant::of(&phi, 2).unwrap().equivalent(&inv).unwrap());

        let second: InvariantJson = serde_json::from_str(
            r#"{"kind":"second","algebra":"sl2C","plus":"mu","minus":"id","label":""}"#,
        )
        .unwrap();
        let (g3, inv2) = codec.decode_invariant(&second).unwrap();
        let phi = realize(&g3, &inv2).unwrap();
        assert_eq!(Invariant::of(&phi, 2).unwrap().to_string(), "[mu,id]");
    }
}
