#pragma once
// Generated by generate.py; do not edit by hand.
namespace frozen {
// vacuum vs thermal nu = 2
constexpr double kFidVacuumThermal2 = 0.66666666666666667;
// thermal nu = 1.5 vs 2.5
constexpr double kFidThermal15Thermal25 = 0.91396721143623745;
// (nu 1.2, r 0.3, phase 0.4) vs (nu 2, r 0.5, phase -1.1)
constexpr double kFidSqueezedPair = 0.72440773815247501;
// two-mode squeezed thermal (2, 6, 0.3) vs beam-split (1.5, 3, 0.5)
constexpr double kFidTwoModePair = 0.61610573508181895;
// same pair as kFidSqueezedPair through the general formula
constexpr double kFidSqueezedPairGeneral = 0.72440773815247501;
// nu = 1.7 + 0.3e, r = 0.2 + 0.5e, phase 0.3e at e = 0.4
constexpr double kQfiOneModeCurve = 0.86155618752697373;
// beam splitter (0.3 + e, 0.2) on two-mode squeezed thermal (2 + e, 3.5 - e, 0.4 + 0.2e) at e = 0.4
constexpr double kQfiTwoModeCurve = 9.6862026427053849;
// second derivative of X_11 at a = 0, vacuum probe, tau = 1, N = 10
constexpr double kCavityX2Vacuum = 0.0080713459534480206;
// one-mode H(0) at nu = 1, r = 0, tau = 1, N = 10
constexpr double kCavityH1ZeroTempR0 = 0.0080713459534480206;
// one-mode H(0) at nu = 1, r = 0.5, tau = 1, N = 10
constexpr double kCavityH1ZeroTempR05 = 1.2087764805432125;
// two-mode exact H at a = 0, nu = (2, 6), r = 0, tau = 1, N = 10
constexpr double kCavityH2LargeTempR0 = 3.8404264892408969;
// two-mode exact H at a = 0, nu = (2, 6), r = 0.5, tau = 1, N = 10
constexpr double kCavityH2LargeTempR05 = 21.990467348870017;
}  // namespace frozen
