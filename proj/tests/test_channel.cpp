#include "temporal/channel.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace temporal;

namespace {

const ClockRef kMain("main", 1);

LatencyTable step_table(long long at, long long before, long long after) {
  return LatencyTable{{{Tick(0), Tick(before)}, {Tick(at), Tick(after)}}};
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Link, LatencyKinds) {
  EXPECT_EQ(Link::constant(Tick(4), kMain).delay_at(Tick(100)), Tick(4));
  const Link table(step_table(7, 5, 8), kMain, kMain);
  EXPECT_EQ(table.delay_at(Tick(0)), Tick(5));
  EXPECT_EQ(table.delay_at(Tick(6)), Tick(5));
  EXPECT_EQ(table.delay_at(Tick(7)), Tick(8));
  EXPECT_THROW(Link(LatencyTable{{{Tick(2), Tick(1)}}}, kMain, kMain), Error);
  EXPECT_THROW(Link(LatencyTable{}, kMain, kMain), Error);

  const Link jitter(SeededJitter{9, Tick(2), Tick(6)}, kMain, kMain);
  for (int t = 0; t < 200; ++t) {
    const Tick d = jitter.delay_at(Tick(t));
    EXPECT_GE(d, Tick(2));
    EXPECT_LE(d, Tick(6));
    EXPECT_EQ(d, jitter.delay_at(Tick(t)));
  }
}

TEST(TimedMessage, StructureChecks) {
  EXPECT_THROW(TimedMessage({{EventRole::Start, Tick(0), 1}}, kMain), Error);
  EXPECT_THROW(TimedMessage({{EventRole::End, Tick(0), 1}, {EventRole::Start, Tick(3), 1}}, kMain), Error);
  EXPECT_THROW(TimedMessage({{EventRole::Start, Tick(5), 1}, {EventRole::End, Tick(3), 1}}, kMain), Error);
  const auto m = TimedMessage::interval(IntervalValue(Tick(2), Tick(9), kMain));
  EXPECT_EQ(m.span(), 7);
}

TEST(Transmit, ConstantDelayPreservesValue) {
  const auto msg = TimedMessage::interval(IntervalValue(Tick(0), Tick(7), kMain));
  const auto out = transmit(msg, Link::constant(Tick(13), kMain));
  EXPECT_EQ(out.start_tick(), Tick(13));
  EXPECT_EQ(out.end_tick(), Tick(20));
  EXPECT_EQ(out.span(), 7);
}

TEST(Transmit, VaryingDelayIsDiagnosed) {
  const auto msg = TimedMessage::interval(IntervalValue(Tick(0), Tick(7), kMain));
  const Link link(step_table(7, 5, 8), kMain, kMain);
  const auto result = transmit_checked(msg, link);
  ASSERT_TRUE(std::holds_alternative<StabilityViolation>(result));
  const auto& v = std::get<StabilityViolation>(result);
  EXPECT_EQ(v.distorted.span(), 10);
  EXPECT_EQ(v.value_error, 3);
  EXPECT_EQ(code_of([&] { transmit(msg, link); }), ErrorCode::StabilityViolation);

  // A step outside the message span leaves it untouched.
  const auto early = TimedMessage::interval(IntervalValue(Tick(8), Tick(12), kMain));
  EXPECT_EQ(transmit(early, link).span(), 4);
}

TEST(Transmit, RandomConstantLatencyInvariance) {
  std::mt19937_64 rng(301);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto start = static_cast<long long>(rng() % 1000);
    const auto len = static_cast<long long>(rng() % 1000);
    const auto delay = static_cast<long long>(rng() % 500);
    std::vector<TimedEvent> events{{EventRole::Start, Tick(start), 1}};
    for (long long p = start + 1; p < start + len; p += 1 + static_cast<long long>(rng() % 50)) {
      events.push_back({EventRole::Pulse, Tick(p), 1});
    }
    events.push_back({EventRole::End, Tick(start + len), 1});
    const TimedMessage msg(events, kMain);
    const auto out = transmit(msg, Link::constant(Tick(delay), kMain));
    ASSERT_EQ(out.span(), msg.span());
    ASSERT_EQ(out.events().size(), msg.events().size());
    for (std::size_t i = 0; i < msg.events().size(); ++i) {
      ASSERT_EQ(out.events()[i].tick, msg.events()[i].tick + Tick(delay));
    }
  }
}

TEST(Reference, NegotiateAndReceive) {
  EXPECT_EQ(negotiate_reference(ClockRef("6f", 6), ClockRef("4f", 4)), Rational(2, 3));
  EXPECT_EQ(negotiate_reference(kMain, kMain), 1);
  const Link link(ConstantLatency{Tick(3)}, ClockRef("3f", 3), ClockRef("2f", 2));
  const auto arrived = TimedMessage::interval(IntervalValue(Tick(3), Tick(10), ClockRef("3f", 3)));
  EXPECT_EQ(receive_value(arrived, link), 4);
}

TEST(Stream, SerialAndDiscontinuous) {
  const std::vector<Integer> values{3, 4};
  EXPECT_EQ(serialize_stream(values, DeliveryMode::Serial, kMain), PulseTrain({Tick(0), Tick(3), Tick(7)}, kMain));
  const std::vector<Integer> dv{5, 2};
  const std::vector<Tick> gaps{Tick(4)};
  const auto train = serialize_stream(dv, DeliveryMode::SerialDiscontinuous, kMain, gaps);
  EXPECT_EQ(train, PulseTrain({Tick(0), Tick(5), Tick(9), Tick(11)}, kMain));
  EXPECT_EQ(parse_stream(train, DeliveryMode::SerialDiscontinuous), dv);
}

TEST(Stream, Errors) {
  const std::vector<Integer> with_zero{3, 0};
  EXPECT_EQ(code_of([&] { serialize_stream(with_zero, DeliveryMode::Serial, kMain); }), ErrorCode::ZeroValue);
  const std::vector<Integer> two{3, 4};
  EXPECT_EQ(code_of([&] { serialize_stream(two, DeliveryMode::SerialDiscontinuous, kMain); }),
            ErrorCode::GapCountMismatch);
  EXPECT_EQ(code_of([&] { serialize_stream(two, DeliveryMode::ParallelSynchronous, kMain); }),
            ErrorCode::ModeMismatch);
  EXPECT_EQ(code_of([] { parse_stream(PulseTrain({Tick(1), Tick(3)}, kMain), DeliveryMode::Serial); }),
            ErrorCode::MalformedStream);
  EXPECT_EQ(code_of([] { parse_stream(PulseTrain({Tick(0), Tick(3), Tick(5)}, kMain),
                                      DeliveryMode::SerialDiscontinuous); }),
            ErrorCode::MalformedStream);
}

TEST(Stream, RandomRoundTrips) {
  std::mt19937_64 rng(302);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Integer> values;
    std::vector<Tick> gaps;
    const int n = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) {
      values.emplace_back(1 + rng() % 1000);
      if (i > 0) gaps.emplace_back(1 + static_cast<long long>(rng() % 50));
    }
    ASSERT_EQ(parse_stream(serialize_stream(values, DeliveryMode::Serial, kMain), DeliveryMode::Serial), values);
    ASSERT_EQ(parse_stream(serialize_stream(values, DeliveryMode::SerialDiscontinuous, kMain, gaps),
                           DeliveryMode::SerialDiscontinuous),
              values);
  }
}

TEST(Parallel, SynchronousAndAsynchronousLanes) {
  const std::vector<Integer> values{5, 7};
  const std::vector<Tick> offsets{Tick(2), Tick(0)};
  const auto lanes = deliver_parallel(values, DeliveryMode::ParallelAsynchronous, kMain, offsets);
  ASSERT_EQ(lanes.size(), 2u);
  EXPECT_EQ(lanes[0], IntervalValue(Tick(2), Tick(7), kMain));
  EXPECT_EQ(lanes[1], IntervalValue(Tick(0), Tick(7), kMain));
  EXPECT_EQ(measure_parallel(lanes), values);
  const auto sync = deliver_parallel(values, DeliveryMode::ParallelSynchronous, kMain);
  EXPECT_EQ(measure_parallel(sync), values);
  const std::vector<Tick> short_offsets{Tick(1)};
  EXPECT_EQ(code_of([&] { deliver_parallel(values, DeliveryMode::ParallelAsynchronous, kMain, short_offsets); }),
            ErrorCode::OffsetCountMismatch);
}
