use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Number of coefficient bins used for linkage estimation.
pub const COEFFICIENT_BINS: u8 = 25;

/// Arithmetic operators of arity two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Operators of arity one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnaryOp {
    Sin,
    Cos,
    Log,
    Sqrt,
}

impl BinaryOp {
    pub const ALL: [BinaryOp; 4] = [BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div];

    /// Division is plain IEEE division; non-finite results are handled by fitness.
    #[inline(always)]
    pub fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            BinaryOp::Add => a + b,
            BinaryOp::Sub => a - b,
            BinaryOp::Mul => a * b,
            BinaryOp::Div => a / b,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
        }
    }
}

impl UnaryOp {
    pub const ALL: [UnaryOp; 4] = [UnaryOp::Sin, UnaryOp::Cos, UnaryOp::Log, UnaryOp::Sqrt];

    /// `log` and `sqrt` act on the magnitude of their argument.
    #[inline(always)]
    pub fn apply(self, x: f64) -> f64 {
        match self {
            UnaryOp::Sin => x.sin(),
            UnaryOp::Cos => x.cos(),
            UnaryOp::Log => x.abs().ln(),
            UnaryOp::Sqrt => x.abs().sqrt(),
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            UnaryOp::Sin => "sin",
            UnaryOp::Cos => "cos",
            UnaryOp::Log => "log",
            UnaryOp::Sqrt => "sqrt",
        }
    }
}

/// One slot of a tree template.
///
/// `Subexpr(j)` calls tree `j` with the slot's two child subtrees bound to
/// argument slots 0 and 1; `Arg(k)` reads argument `k` of the current call.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Symbol {
    Binary(BinaryOp),
    Unary(UnaryOp),
    Feature(u32),
    Coefficient { value: f64, bin: u8 },
    Subexpr(u32),
    Arg(u8),
}

impl Symbol {
    pub fn coefficient(value: f64) -> Self {
        Symbol::Coefficient { value, bin: 0 }
    }

    /// Number of children the symbol consumes.
    pub fn arity(&self) -> usize {
        match self {
            Symbol::Binary(_) | Symbol::Subexpr(_) => 2,
            Symbol::Unary(_) => 1,
            _ => 0,
        }
    }

    pub fn is_terminal(&self) -> bool {
        self.arity() == 0
    }

    /// Categorical identity used for linkage estimation: coefficients are
    /// identified by their bin, everything else by kind and index.
    pub fn category(&self) -> u64 {
        let (tag, payload): (u64, u64) = match *self {
            Symbol::Binary(op) => (0, op as u64),
            Symbol::Unary(op) => (1, op as u64),
            Symbol::Feature(k) => (2, k as u64),
            Symbol::Coefficient { bin, .. } => (3, bin as u64),
            Symbol::Subexpr(j) => (4, j as u64),
            Symbol::Arg(k) => (5, k as u64),
        };
        (tag << 32) | payload
    }

    /// Whether replacing `self` by `other` can change the value of an
    /// expression. Coefficient bins are bookkeeping and do not count.
    pub fn differs_semantically(&self, other: &Symbol) -> bool {
        match (self, other) {
            (Symbol::Coefficient { value: a, .. }, Symbol::Coefficient { value: b, .. }) => {
                a.to_bits() != b.to_bits()
            }
            _ => self != other,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Binary(op) => f.write_str(op.token()),
            Symbol::Unary(op) => f.write_str(op.token()),
            Symbol::Feature(k) => write!(f, "x{k}"),
            Symbol::Coefficient { value, .. } => write!(f, "c{value}"),
            Symbol::Subexpr(j) => write!(f, "f{j}"),
            Symbol::Arg(k) => write!(f, "a{k}"),
        }
    }
}

impl FromStr for Symbol {
    type Err = String;

    fn from_str(token: &str) -> Result<Self, Self::Err> {
        let sym = match token {
            "+" => Symbol::Binary(BinaryOp::Add),
            "-" => Symbol::Binary(BinaryOp::Sub),
            "*" => Symbol::Binary(BinaryOp::Mul),
            "/" => Symbol::Binary(BinaryOp::Div),
            "sin" => Symbol::Unary(UnaryOp::Sin),
            "cos" => Symbol::Unary(UnaryOp::Cos),
            "log" => Symbol::Unary(UnaryOp::Log),
            "sqrt" => Symbol::Unary(UnaryOp::Sqrt),
            _ => {
                let bad = || format!("unknown symbol `{token}`");
                let (head, rest) = token.split_at(token.chars().next().ok_or_else(bad)?.len_utf8());
                match head {
                    "x" => Symbol::Feature(rest.parse().map_err(|_| bad())?),
                    "f" => Symbol::Subexpr(rest.parse().map_err(|_| bad())?),
                    "a" => Symbol::Arg(rest.parse().map_err(|_| bad())?),
                    "c" => Symbol::coefficient(rest.parse().map_err(|_| bad())?),
                    _ => return Err(bad()),
                }
            }
        };
        Ok(sym)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn protected_unaries_use_magnitude() {
        assert_eq!(UnaryOp::Sqrt.apply(-4.0), 2.0);
        assert_eq!(UnaryOp::Log.apply(-1.0), 0.0);
        assert_eq!(UnaryOp::Log.apply(0.0), f64::NEG_INFINITY);
        assert!(BinaryOp::Div.apply(1.0, 0.0).is_infinite());
    }

    #[test]
    fn tokens_round_trip() {
        for t in ["+", "-", "*", "/", "sin", "cos", "log", "sqrt", "x7", "f2", "a1", "c-0.25"] {
            let s: Symbol = t.parse().unwrap();
            assert_eq!(s.to_string(), t);
        }
        assert!("q1".parse::<Symbol>().is_err());
        assert!("x".parse::<Symbol>().is_err());
        assert!("".parse::<Symbol>().is_err());
    }

    #[test]
    fn coefficient_bins_do_not_count_as_change() {
        let a = Symbol::Coefficient { value: 1.5, bin: 3 };
        let b = Symbol::Coefficient { value: 1.5, bin: 9 };
        assert!(!a.differs_semantically(&b));
        assert!(a.differs_semantically(&Symbol::coefficient(1.25)));
        assert_ne!(a.category(), b.category());
    }
}
