//! Labels naming the result that justifies each verdict.
//!
//! Reports carry these labels verbatim so a verdict can be traced back to the
//! statement it instantiates.

use std::fmt;

use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Citation {
    TrivialImage,
    MultivariateSinglePartial,
    ImageSingleSlot,
    ImageMultiSlot,
    ImageSingleSlotNotMz,
    TranslationMonomials,
    EDerivationImage,
    EDerivationLocallyFinite,
    Triangular,
    SingleSlotNilpotency,
    SingleSlotFiniteness,
    CharTwoNilpotency,
    CharThreeNilpotency,
    CoefficientRecurrence,
    UnitCornerCoefficient,
    OrbitSearch,
    IdealOneSlotRadicalZero,
    IdealOneSlotNotMz,
    IdealTwoSlotsFirst,
    IdealTwoSlotsSecond,
    IdealTwoSlotsRadicalZero,
    IdealManySlots,
    ConstantDerivationNotMz,
    ConstantDerivationRadicalZero,
    IdealMultiSlotDerivation,
    IdealLiftedImageWitness,
    EIdealHigherDegree,
    EIdealLinearConstant,
    EIdealLinearTranslation,
    EIdealLinearScaling,
    EIdealPowerConstant,
    EIdealPowerZero,
    EIdealPowerTranslation,
    EIdealPowerScaling,
    EIdealUncovered,
}

impl Citation {
    pub fn as_str(self) -> &'static str {
        use Citation::*;
        match self {
            TrivialImage => "trivial image",
            MultivariateSinglePartial => "Theorem 2.1",
            ImageSingleSlot => "Theorem 2.4(1)",
            ImageMultiSlot => "Theorem 2.4(2)",
            ImageSingleSlotNotMz => "Proposition 2.3",
            TranslationMonomials => "Theorem 2.5",
            EDerivationImage => "Corollary 2.6",
            EDerivationLocallyFinite => "Remark 2.7",
            Triangular => "Proposition 2.8",
            SingleSlotNilpotency => "Proposition 3.1",
            SingleSlotFiniteness => "Remark 3.3",
            CharTwoNilpotency => "Theorem 3.4",
            CharThreeNilpotency => "Theorem 3.6",
            CoefficientRecurrence => "Lemma 3.7",
            UnitCornerCoefficient => "Proposition 3.8",
            OrbitSearch => "orbit search",
            IdealOneSlotRadicalZero => "Proposition 4.1(1)",
            IdealOneSlotNotMz => "Proposition 4.1(2)",
            IdealTwoSlotsFirst => "Proposition 4.2(2.1)",
            IdealTwoSlotsSecond => "Proposition 4.2(2.2)",
            IdealTwoSlotsRadicalZero => "Proposition 4.2(2.3)",
            IdealManySlots => "Proposition 4.2(3)",
            ConstantDerivationNotMz => "Corollary 4.3(1)",
            ConstantDerivationRadicalZero => "Corollary 4.3(2)",
            IdealMultiSlotDerivation => "Theorem 4.4(2)",
            IdealLiftedImageWitness => "Proposition 2.3, witness times u^p",
            EIdealHigherDegree => "Theorem 4.7 (deg phi >= 2)",
            EIdealLinearConstant => "Theorem 4.7(1.1)",
            EIdealLinearTranslation => "Theorem 4.7(1.2)",
            EIdealLinearScaling => "Theorem 4.7(1.3)",
            EIdealPowerConstant => "Theorem 4.7(2.1)",
            EIdealPowerZero => "Theorem 4.7(2.1), c = 0",
            EIdealPowerTranslation => "Theorem 4.7(2.2)",
            EIdealPowerScaling => "Theorem 4.7(2.3)",
            EIdealUncovered => "Theorem 4.7",
        }
    }
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Citation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}
