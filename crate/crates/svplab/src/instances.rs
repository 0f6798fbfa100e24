//! Subset-sum problem instances, assignments, and the line-oriented text
//! format used by the command-line tools.
//!
//! Two instance kinds exist: plain subset-sum (pick any subset of the weights
//! hitting the target) and cardinality-constrained subset-sum (the subset
//! must additionally have exactly `c * n` elements for a rational ratio `c`).
//! Weights are non-negative big integers; zero weights are allowed. A target
//! of zero is accepted as well, so the empty assignment witnesses the plain
//! problem trivially.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("instance needs at least one weight")]
    EmptyWeights,
    #[error("weight at position {0} is negative")]
    NegativeWeight(usize),
    #[error("target must be non-negative")]
    NegativeTarget,
    #[error("cardinality ratio must lie strictly between 0 and 1, got {0}")]
    RatioOutOfRange(BigRational),
    #[error("cardinality ratio {ratio} times {n} weights is not an integer")]
    NonIntegralCount { ratio: BigRational, n: usize },
    #[error("assignment has {got} bits but the instance has {expected} weights")]
    LengthMismatch { expected: usize, got: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected `{expected}`, got `{got}`")]
    UnexpectedLine {
        line: usize,
        expected: &'static str,
        got: String,
    },
    #[error("line {line}: malformed integer `{token}`")]
    BadInteger { line: usize, token: String },
    #[error("declared n = {declared} but found {got} weights")]
    WeightCount { declared: usize, got: usize },
    #[error("missing `{0}` line")]
    MissingField(&'static str),
    #[error(transparent)]
    Invalid(#[from] InstanceError),
}

/// A plain subset-sum instance: weights a_1..a_n and target s.
///
/// YES means some subset of the weights sums to s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetSumInstance {
    weights: Vec<BigInt>,
    target: BigInt,
}

impl SubsetSumInstance {
    pub fn new(weights: Vec<BigInt>, target: BigInt) -> Result<Self, InstanceError> {
        validate_weights(&weights)?;
        if target.is_negative() {
            return Err(InstanceError::NegativeTarget);
        }
        Ok(SubsetSumInstance { weights, target })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    pub fn target(&self) -> &BigInt {
        &self.target
    }

    pub fn weight_sum(&self) -> BigInt {
        self.weights.iter().sum()
    }

    /// True iff the assignment selects a subset summing to the target.
    pub fn check_assignment(&self, a: &Assignment) -> Result<bool, InstanceError> {
        if a.len() != self.len() {
            return Err(InstanceError::LengthMismatch {
                expected: self.len(),
                got: a.len(),
            });
        }
        Ok(a.selected_sum(&self.weights) == self.target)
    }
}

/// A cardinality-constrained subset-sum instance.
///
/// The ratio c satisfies 0 < c < 1 and c * n must be an integer r; YES means
/// some subset of exactly r weights sums to the target. c = 1/2 is the
/// half-full special case produced by the first reduction step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardinalityInstance {
    weights: Vec<BigInt>,
    target: BigInt,
    ratio: BigRational,
    required_count: usize,
}

impl CardinalityInstance {
    pub fn new(
        weights: Vec<BigInt>,
        target: BigInt,
        ratio: BigRational,
    ) -> Result<Self, InstanceError> {
        validate_weights(&weights)?;
        if target.is_negative() {
            return Err(InstanceError::NegativeTarget);
        }
        if !ratio.is_positive() || ratio >= BigRational::from_integer(BigInt::from(1)) {
            return Err(InstanceError::RatioOutOfRange(ratio));
        }
        let n = weights.len();
        let scaled = &ratio * BigRational::from_integer(BigInt::from(n));
        if !scaled.is_integer() {
            return Err(InstanceError::NonIntegralCount { ratio, n });
        }
        let required_count = usize::try_from(scaled.to_integer())
            .expect("0 < c < 1 keeps the required count below n");
        Ok(CardinalityInstance {
            weights,
            target,
            ratio,
            required_count,
        })
    }

    /// Builds the instance from an explicit required count, with c = r/n.
    pub fn from_required_count(
        weights: Vec<BigInt>,
        target: BigInt,
        required_count: usize,
    ) -> Result<Self, InstanceError> {
        let n = weights.len();
        if n == 0 {
            return Err(InstanceError::EmptyWeights);
        }
        let ratio = BigRational::new(BigInt::from(required_count), BigInt::from(n));
        Self::new(weights, target, ratio)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    pub fn target(&self) -> &BigInt {
        &self.target
    }

    pub fn ratio(&self) -> &BigRational {
        &self.ratio
    }

    pub fn required_count(&self) -> usize {
        self.required_count
    }

    pub fn weight_sum(&self) -> BigInt {
        self.weights.iter().sum()
    }

    /// True iff the assignment hits the target using exactly the required
    /// number of weights.
    pub fn check_assignment(&self, a: &Assignment) -> Result<bool, InstanceError> {
        if a.len() != self.len() {
            return Err(InstanceError::LengthMismatch {
                expected: self.len(),
                got: a.len(),
            });
        }
        Ok(a.popcount() == self.required_count && a.selected_sum(&self.weights) == self.target)
    }
}

fn validate_weights(weights: &[BigInt]) -> Result<(), InstanceError> {
    if weights.is_empty() {
        return Err(InstanceError::EmptyWeights);
    }
    for (i, w) in weights.iter().enumerate() {
        if w.is_negative() {
            return Err(InstanceError::NegativeWeight(i));
        }
    }
    Ok(())
}

/// A 0/1 selection vector over the weights of an instance.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Assignment {
    bits: Vec<bool>,
}

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Assignment { bits }
    }

    pub fn from_indices(n: usize, selected: &[usize]) -> Self {
        let mut bits = vec![false; n];
        for &i in selected {
            bits[i] = true;
        }
        Assignment { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn popcount(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn selected_sum(&self, weights: &[BigInt]) -> BigInt {
        self.bits
            .iter()
            .zip(weights)
            .filter(|(&b, _)| b)
            .map(|(_, w)| w)
            .sum()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Which padding scheme a cardinality reduction step used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaddingVariant {
    /// Every solution must contain all padding weights (large ratio).
    Dense,
    /// Every solution must omit all padding weights (small ratio).
    Sparse,
}

impl fmt::Display for PaddingVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PaddingVariant::Dense => write!(f, "dense"),
            PaddingVariant::Sparse => write!(f, "sparse"),
        }
    }
}

/// Record of one reduction step, sufficient to lift a solution of the
/// produced instance back to the consumed one deterministically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionTrace {
    /// n zero weights were appended and the required count fixed to n.
    HalfFull { original_len: usize },
    /// `padding_count` copies of `padding_value` were appended; the target
    /// moved by `target_shift` (the padding sum for the dense variant, zero
    /// for the sparse one).
    CFull {
        variant: PaddingVariant,
        original_len: usize,
        padding_count: usize,
        padding_value: BigInt,
        target_shift: BigInt,
    },
}

/// One parsed instance file: plain or cardinality-constrained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedInstance {
    Plain(SubsetSumInstance),
    Cardinality(CardinalityInstance),
}

impl ParsedInstance {
    pub fn weights(&self) -> &[BigInt] {
        match self {
            ParsedInstance::Plain(inst) => inst.weights(),
            ParsedInstance::Cardinality(inst) => inst.weights(),
        }
    }
}

/// Parses the canonical text format:
///
/// ```text
/// n 3
/// weights 1 5 9
/// target 6
/// cardinality 2
/// ```
///
/// The `cardinality` line is optional; `#` comment lines and blank lines are
/// accepted anywhere, and runs of whitespace are normalized.
pub fn parse_instance(text: &str) -> Result<ParsedInstance, ParseError> {
    let mut declared_n: Option<usize> = None;
    let mut weights: Option<Vec<BigInt>> = None;
    let mut target: Option<BigInt> = None;
    let mut cardinality: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let key = tokens.next().expect("non-empty line has a first token");
        match key {
            "n" if declared_n.is_none() => {
                declared_n = Some(parse_usize(line_no, &mut tokens)?);
            }
            "weights" if declared_n.is_some() && weights.is_none() => {
                let mut ws = Vec::new();
                for token in tokens {
                    ws.push(parse_bigint(line_no, token)?);
                }
                weights = Some(ws);
            }
            "target" if weights.is_some() && target.is_none() => {
                let token = tokens.next().ok_or(ParseError::UnexpectedLine {
                    line: line_no,
                    expected: "target <s>",
                    got: line.to_string(),
                })?;
                target = Some(parse_bigint(line_no, token)?);
            }
            "cardinality" if target.is_some() && cardinality.is_none() => {
                cardinality = Some(parse_usize(line_no, &mut tokens)?);
            }
            _ => {
                return Err(ParseError::UnexpectedLine {
                    line: line_no,
                    expected: expected_field(&declared_n, &weights, &target),
                    got: line.to_string(),
                });
            }
        }
    }

    let declared = declared_n.ok_or(ParseError::MissingField("n"))?;
    let weights = weights.ok_or(ParseError::MissingField("weights"))?;
    let target = target.ok_or(ParseError::MissingField("target"))?;
    if weights.len() != declared {
        return Err(ParseError::WeightCount {
            declared,
            got: weights.len(),
        });
    }
    match cardinality {
        None => Ok(ParsedInstance::Plain(SubsetSumInstance::new(
            weights, target,
        )?)),
        Some(r) => Ok(ParsedInstance::Cardinality(
            CardinalityInstance::from_required_count(weights, target, r)?,
        )),
    }
}

fn expected_field(
    n: &Option<usize>,
    weights: &Option<Vec<BigInt>>,
    target: &Option<BigInt>,
) -> &'static str {
    if n.is_none() {
        "n <int>"
    } else if weights.is_none() {
        "weights <w1> ... <wn>"
    } else if target.is_none() {
        "target <s>"
    } else {
        "cardinality <r> or end of file"
    }
}

fn parse_usize<'a>(
    line: usize,
    tokens: &mut impl Iterator<Item = &'a str>,
) -> Result<usize, ParseError> {
    let token = tokens.next().ok_or(ParseError::UnexpectedLine {
        line,
        expected: "<int>",
        got: String::new(),
    })?;
    token.parse::<usize>().map_err(|_| ParseError::BadInteger {
        line,
        token: token.to_string(),
    })
}

fn parse_bigint(line: usize, token: &str) -> Result<BigInt, ParseError> {
    BigInt::from_str(token).map_err(|_| ParseError::BadInteger {
        line,
        token: token.to_string(),
    })
}

/// Canonical serialization; `parse_instance` inverts it exactly.
pub fn serialize_plain(inst: &SubsetSumInstance) -> String {
    serialize_lines(inst.weights(), inst.target(), None)
}

/// Canonical serialization of a cardinality instance.
pub fn serialize_cardinality(inst: &CardinalityInstance) -> String {
    serialize_lines(inst.weights(), inst.target(), Some(inst.required_count()))
}

/// Canonical serialization of either instance kind.
pub fn serialize_instance(inst: &ParsedInstance) -> String {
    match inst {
        ParsedInstance::Plain(p) => serialize_plain(p),
        ParsedInstance::Cardinality(c) => serialize_cardinality(c),
    }
}

fn serialize_lines(weights: &[BigInt], target: &BigInt, cardinality: Option<usize>) -> String {
    let mut out = String::new();
    out.push_str(&format!("n {}\n", weights.len()));
    let rendered: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
    out.push_str(&format!("weights {}\n", rendered.join(" ")));
    out.push_str(&format!("target {target}\n"));
    if let Some(r) = cardinality {
        out.push_str(&format!("cardinality {r}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn weights(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    fn rat(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn plain_instance_validates() {
        assert!(SubsetSumInstance::new(weights(&[1, 5, 9]), BigInt::from(6)).is_ok());
        assert_eq!(
            SubsetSumInstance::new(vec![], BigInt::from(1)),
            Err(InstanceError::EmptyWeights)
        );
        assert_eq!(
            SubsetSumInstance::new(weights(&[1, -2]), BigInt::from(1)),
            Err(InstanceError::NegativeWeight(1))
        );
        assert_eq!(
            SubsetSumInstance::new(weights(&[1]), BigInt::from(-1)),
            Err(InstanceError::NegativeTarget)
        );
    }

    #[test]
    fn ratio_must_divide() {
        let err = CardinalityInstance::new(weights(&[1, 2, 3, 4, 5]), BigInt::from(6), rat(5, 6));
        assert!(matches!(err, Err(InstanceError::NonIntegralCount { .. })));
        let ok = CardinalityInstance::new(
            weights(&[1, 2, 3, 4, 5, 6]),
            BigInt::from(6),
            rat(5, 6),
        )
        .unwrap();
        assert_eq!(ok.required_count(), 5);
    }

    #[test]
    fn ratio_bounds_enforced() {
        for bad in [rat(0, 1), rat(1, 1), rat(3, 2), rat(-1, 2)] {
            let err = CardinalityInstance::new(weights(&[1, 2]), BigInt::from(1), bad);
            assert!(matches!(err, Err(InstanceError::RatioOutOfRange(_))));
        }
    }

    #[test]
    fn check_assignment_counts_and_sums() {
        let inst =
            CardinalityInstance::new(weights(&[3, 5, 0, 0]), BigInt::from(5), rat(1, 2)).unwrap();
        let good = Assignment::new(vec![false, true, true, false]);
        assert!(inst.check_assignment(&good).unwrap());
        let wrong_count = Assignment::new(vec![false, true, false, false]);
        assert!(!inst.check_assignment(&wrong_count).unwrap());

        let plain = SubsetSumInstance::new(weights(&[2, 2]), BigInt::from(4)).unwrap();
        assert!(plain
            .check_assignment(&Assignment::new(vec![true, true]))
            .unwrap());
        let zero_bits = Assignment::new(vec![false, false]);
        let positive = SubsetSumInstance::new(weights(&[2, 2]), BigInt::from(1)).unwrap();
        assert!(!positive.check_assignment(&zero_bits).unwrap());
        assert!(matches!(
            plain.check_assignment(&Assignment::new(vec![true])),
            Err(InstanceError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn parse_rejects_missing_target() {
        let err = parse_instance("n 2\nweights 1 2\n");
        assert_eq!(err, Err(ParseError::MissingField("target")));
    }

    #[test]
    fn parse_accepts_comments_and_whitespace() {
        let text = "# generated\n  n   3\n\nweights  1   5 9\n# mid comment\ntarget 6\n";
        let inst = parse_instance(text).unwrap();
        match inst {
            ParsedInstance::Plain(p) => {
                assert_eq!(p.len(), 3);
                assert_eq!(*p.target(), BigInt::from(6));
            }
            _ => panic!("expected plain instance"),
        }
    }

    #[test]
    fn parse_checks_weight_count() {
        let err = parse_instance("n 3\nweights 1 2\ntarget 1\n");
        assert_eq!(
            err,
            Err(ParseError::WeightCount {
                declared: 3,
                got: 2
            })
        );
    }

    #[test]
    fn round_trip_is_identity_on_canonical_form() {
        let texts = [
            "n 3\nweights 1 5 9\ntarget 6\n",
            "n 4\nweights 3 5 0 0\ntarget 5\ncardinality 2\n",
        ];
        for text in texts {
            let parsed = parse_instance(text).unwrap();
            assert_eq!(serialize_instance(&parsed), text);
        }
    }

    #[test]
    fn serialize_then_parse_canonicalizes() {
        let noisy = "# c\nn 2\n weights  7 0\ntarget 7\n\n";
        let parsed = parse_instance(noisy).unwrap();
        let canonical = serialize_instance(&parsed);
        assert_eq!(canonical, "n 2\nweights 7 0\ntarget 7\n");
        assert_eq!(parse_instance(&canonical).unwrap(), parsed);
    }
}
