#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace trrg {

// Exact time values. Clock valuations and delays never use floating point.
using Time = boost::rational<std::int64_t>;

// Always "p/q" with q >= 1, e.g. "3/2", "2/1", "0/1".
std::string format_time(const Time& t);

// Accepts "p/q" or a plain integer "p". Throws DomainError on malformed input.
Time parse_time(std::string_view text);

// Largest integer not above t.
std::int64_t floor_of(const Time& t);

}  // namespace trrg
