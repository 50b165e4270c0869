#pragma once

// Independently computed reference values (40-digit bisection and direct
// evaluation, outside this codebase).

namespace conifold::ref {

// (m, k) = (1, 1): u = x^4 + x^3 - 1
inline constexpr double kRPlus11 = 0.8191725133961644397;
inline constexpr double kTCon11 = 3.7996047535960717359;
inline constexpr double kXCon11First = 1.4902161200999536481;
inline constexpr double kNegRoot11 = -1.38027757;
inline constexpr double kComplexRoot11Re = -0.21944747;
inline constexpr double kComplexRoot11Im = 0.91447366;
inline constexpr double kComplexRoot11Mod = 0.94043568;

inline constexpr double kR0_11 = 1.5874010519681994;
inline constexpr double kR0_22 = 1.3831618672225916;

inline constexpr double kRPlus12 = 0.75487766624669276005;
inline constexpr double kRPlus22 = 0.81550873763314580097;
inline constexpr double kRPlus23 = 0.78615137775742328607;
inline constexpr double kTCon23 = 6.6603813535711224291;

inline constexpr double kCaseIILhs = 2.0545576896120440609;

// case III lhs, k = 2..10
inline constexpr double kCaseIIILhs[] = {2.19615, 2.13675, 2.10504, 2.08529, 2.07180,
                                         2.06200, 2.05456, 2.04871, 2.04400};
// case III minorant 2(2^{k/(k+2)} - 1), k = 6..10
inline constexpr double kCaseIIIMinorant[] = {1.36359, 1.42898, 1.48220, 1.52637, 1.56359};

struct CaseIVRow {
  int m;
  double r0;
  double v_at_r0;
  double r_minus;
  double minorant;  // 0 when the direct check applies
};
inline constexpr CaseIVRow kCaseIV[] = {
    {1, 1.5874010519681994, 1.349604207872797899, 1.3802775690976141157, 0.0},
    {2, 1.3160740129524924, 1.1961524227066318806, 1.2106077944060859328, 0.0},
    {3, 1.2167286837864115, 1.1367468036288476922, 1.1461389496537800581, 0.03143313302079642},
    {10, 1.0679114018529572, 1.0439955010062788584, 1.0466933088059401978, 0.5635948725613571},
};

}  // namespace conifold::ref
