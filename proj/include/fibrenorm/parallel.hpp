#pragma once

namespace fibrenorm {

// Serial is the reference path; parallel kernels must reproduce it bit for bit.
enum class Exec { serial, parallel };

}  // namespace fibrenorm
