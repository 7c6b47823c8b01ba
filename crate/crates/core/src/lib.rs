//! Exact polynomial sequences from tridiagonal recurrences and continued
//! fractions, with Hankel total positivity and higher-order q-log-convexity.

pub mod cfrac;
pub mod cli;
pub mod error;
pub mod expr;
pub mod logcvx;
pub mod poly;
pub mod posmat;
pub mod seqspec;
pub mod series;
pub mod triangle;

pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use expr::{parse_expr, Expr, KPoly};
pub use poly::{Poly, Rational};
pub use seqspec::{family_spec, CoeffSeqSpec, FamilyId, JacobiSpec, StieltjesSpec};
pub use series::{gf_closed_form, Series};
pub use triangle::Triangle;
pub use logcvx::{is_m_q_log_convex, l_operator, CriterionVerdict, Order};
pub use posmat::{hankel, is_q_tp, PolyMatrix, TpMode, TpReport};
