#include "temporal/core.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>

using namespace temporal;

namespace {

const ClockRef kMain("main", 1);

// Base-10 digits of n, least significant first, read off its decimal text.
std::vector<Integer> decimal_digits_oracle(unsigned long long n) {
  std::string text = std::to_string(n);
  std::reverse(text.begin(), text.end());
  std::vector<Integer> digits;
  for (char c : text) digits.emplace_back(c - '0');
  return digits;
}

// Number of whole reference periods inside a length-L interval, counted one by one.
Integer periods_by_enumeration(long long length, const Rational& own_freq, const Rational& ref_freq) {
  // Period j ends at j / ref_freq; the interval ends at L / own_freq.
  const Rational end = Rational(length) / own_freq;
  Integer count = 0;
  for (long long j = 1; Rational(j) / ref_freq <= end; ++j) ++count;
  return count;
}

}  // namespace

TEST(Tick, RejectsNegativeCountsAndUnderflow) {
  EXPECT_THROW(Tick(-1), Error);
  EXPECT_THROW(Tick(3) - Tick(4), Error);
  EXPECT_EQ(Tick(7) - Tick(4), Tick(3));
}

TEST(Tick, ArithmeticIsUnbounded) {
  const Tick big(Integer(1) << 200);
  EXPECT_EQ((big + big).count(), Integer(1) << 201);
}

TEST(ClockRef, RequiresPositiveFrequency) {
  EXPECT_THROW(ClockRef("z", 0), Error);
  EXPECT_THROW(ClockRef("n", -1), Error);
  EXPECT_EQ(ratio(ClockRef("a", 6), ClockRef("b", 4)), Rational(2, 3));
}

TEST(PulseTrain, EnforcesStrictIncrease) {
  EXPECT_THROW(PulseTrain({Tick(0), Tick(3), Tick(3)}, kMain), Error);
  EXPECT_THROW(PulseTrain({Tick(5), Tick(2)}, kMain), Error);
  EXPECT_TRUE(PulseTrain{kMain}.empty());
}

TEST(PulseTrain, CombinatorsKeepStrictIncrease) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Tick> a, b;
    for (int i = 0, pos = 0; i < 20; ++i) a.emplace_back(pos += 1 + static_cast<int>(rng() % 5));
    for (int i = 0, pos = 0; i < 20; ++i) b.emplace_back(pos += 1 + static_cast<int>(rng() % 5));
    const PulseTrain merged = PulseTrain(a, kMain).merged_with(PulseTrain(b, kMain));
    EXPECT_TRUE(std::is_sorted(merged.pulses().begin(), merged.pulses().end()));
    EXPECT_EQ(std::adjacent_find(merged.pulses().begin(), merged.pulses().end()), merged.pulses().end());
    const PulseTrain shifted = merged.shifted(Tick(static_cast<int>(rng() % 100)));
    EXPECT_EQ(shifted.size(), merged.size());
  }
}

TEST(PulseTrain, MergeRequiresSameClock) {
  EXPECT_THROW(PulseTrain({Tick(0)}, kMain).merged_with(PulseTrain({Tick(1)}, ClockRef("fast", 3))), Error);
}

TEST(Unary, EncodesSevenAsLengthSeven) {
  EXPECT_EQ(encode_unary(7, kMain).length, 7);
  EXPECT_EQ(encode_unary(0, kMain).length, 0);
  EXPECT_EQ(encode_unary(1'000'000, kMain).length, 1'000'000);
  EXPECT_EQ(decode_unary(UnaryTrain{7, kMain}), 7);
  EXPECT_EQ(decode_unary(UnaryTrain{0, kMain}), 0);
}

TEST(Unary, RoundTripExhaustive) {
  for (int n = 0; n <= 10'000; ++n) ASSERT_EQ(decode_unary(encode_unary(n, kMain)), n);
}

TEST(Pim, DelimitersAtZeroAndN) {
  EXPECT_EQ(encode_pim(7, kMain), PulseTrain({Tick(0), Tick(7)}, kMain));
  EXPECT_EQ(encode_pim(0, kMain), PulseTrain({Tick(0)}, kMain));
  EXPECT_EQ(encode_pim(5, kMain), PulseTrain({Tick(0), Tick(5)}, kMain));
  EXPECT_EQ(decode_pim(PulseTrain({Tick(0), Tick(7)}, kMain)), 7);
  EXPECT_EQ(decode_pim(PulseTrain({Tick(0)}, kMain)), 0);
}

TEST(Pim, RejectsMalformedCodes) {
  try {
    decode_pim(PulseTrain({Tick(0), Tick(3), Tick(9)}, kMain));
    FAIL() << "three pulses must not decode";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedCode);
  }
  EXPECT_THROW(decode_pim(PulseTrain(kMain)), Error);
  EXPECT_THROW(decode_pim(PulseTrain({Tick(2), Tick(5)}, kMain)), Error);
}

TEST(Pim, RoundTripExhaustive) {
  for (int n = 0; n <= 10'000; ++n) ASSERT_EQ(decode_pim(encode_pim(n, kMain)), n);
}

TEST(MeasureInterval, OwnClockIsExact) {
  EXPECT_EQ(measure_interval(IntervalValue(Tick(2), Tick(9), kMain), kMain), 7);
}

TEST(MeasureInterval, FasterAndSlowerReferences) {
  const ClockRef f("f", 1);
  EXPECT_EQ(measure_interval(IntervalValue(Tick(0), Tick(5), f), ClockRef("3f", 3)), 15);
  const Integer expected_half = periods_by_enumeration(5, 1, Rational(1, 2));
  ASSERT_EQ(expected_half, 2);
  EXPECT_EQ(measure_interval(IntervalValue(Tick(0), Tick(5), f), ClockRef("f/2", Rational(1, 2))), expected_half);
}

TEST(MeasureInterval, MatchesEnumerationOnRandomClocks) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const Rational own(1 + static_cast<int>(rng() % 7), 1 + static_cast<int>(rng() % 5));
    const Rational ref(1 + static_cast<int>(rng() % 7), 1 + static_cast<int>(rng() % 5));
    const long long length = static_cast<long long>(rng() % 60);
    const long long start = static_cast<long long>(rng() % 50);
    const IntervalValue iv(Tick(start), Tick(start + length), ClockRef("own", own));
    EXPECT_EQ(measure_interval(iv, ClockRef("ref", ref)), periods_by_enumeration(length, own, ref));
  }
}

TEST(MeasureInterval, RatioOneExactAndMonotone) {
  std::mt19937_64 rng(5);
  const ClockRef ref("ref", Rational(7, 3));
  for (int trial = 0; trial < 500; ++trial) {
    const auto start = static_cast<long long>(rng() % 1000);
    const auto len = static_cast<long long>(rng() % 1000);
    const IntervalValue iv(Tick(start), Tick(start + len), kMain);
    EXPECT_EQ(measure_interval(iv, kMain), len);
    const IntervalValue longer(Tick(start), Tick(start + len + 1 + static_cast<long long>(rng() % 10)), kMain);
    EXPECT_LE(measure_interval(iv, ref), measure_interval(longer, ref));
  }
}

TEST(IntervalValue, EndBeforeStartRejected) {
  EXPECT_THROW(IntervalValue(Tick(5), Tick(4), kMain), Error);
}

TEST(Hybrid, EncodesLittleEndianDigits) {
  const auto seven = encode_hybrid(7, 10, kMain);
  ASSERT_EQ(seven.size(), 1u);
  EXPECT_EQ(seven[0].length, 7);

  const auto oracle = decimal_digits_oracle(23);
  const auto digits = encode_hybrid(23, 10, kMain);
  ASSERT_EQ(digits.size(), oracle.size());
  for (std::size_t i = 0; i < digits.size(); ++i) EXPECT_EQ(digits[i].length, oracle[i]);
  EXPECT_EQ(digits[0].length, 3);
  EXPECT_EQ(digits[1].length, 2);

  const auto zero = encode_hybrid(0, 2, kMain);
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero[0].length, 0);
}

TEST(Hybrid, DecodeAndErrors) {
  EXPECT_EQ(decode_hybrid({UnaryTrain{3, kMain}, UnaryTrain{2, kMain}}, 10), 23);
  EXPECT_EQ(decode_hybrid({UnaryTrain{0, kMain}}, 2), 0);
  try {
    decode_hybrid({UnaryTrain{5, kMain}}, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DigitOverflow);
  }
  try {
    encode_hybrid(5, 1, kMain);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidBase);
  }
}

TEST(Hybrid, RandomRoundTripAndNoLeadingZeros) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    const Integer n = rng() % 1'000'000'000ULL;
    const unsigned base = 2 + static_cast<unsigned>(rng() % 15);
    const auto digits = encode_hybrid(n, base, kMain);
    ASSERT_EQ(decode_hybrid(digits, base), n);
    if (n != 0) {
      EXPECT_NE(digits.back().length, 0);
    }
  }
}

TEST(MultiValentTrain, AmplitudesArePositive) {
  EXPECT_THROW(MultiValentTrain({{Tick(2), Integer(0)}}, kMain), Error);
  MultiValentTrain t(kMain);
  t.deposit(Tick(4), 2);
  t.deposit(Tick(4), 5);
  EXPECT_EQ(t.amplitude(Tick(4)), 7);
  EXPECT_EQ(t.amplitude(Tick(5)), 0);
}
