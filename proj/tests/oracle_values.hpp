#pragma once
// Generated by tests/oracles/gen_oracles.py (mpmath, 40 digits). Do not edit.

#include <array>
#include <initializer_list>

namespace oracle {

struct OracleCase {
    std::array<double, 6> args;
    double value;
};

inline constexpr OracleCase kErf[] = {
    {{0.3}, 0.32862675945912742764},
    {{2.5}, 0.99959304798255504106},
    {{-1.25}, -0.92290012825645823014},
};
inline constexpr OracleCase kE1[] = {
    {{0.01}, 4.0379295765381138318},
    {{3.0}, 0.013048381094197037413},
    {{40.0}, 1.0367732614516569722e-19},
};
inline constexpr OracleCase kJ0[] = {
    {{1.0}, 0.76519768655796655145},
    {{25.5}, 0.14406215754684786173},
    {{0.001}, 0.999999750000015625},
};
inline constexpr OracleCase kJ1[] = {
    {{1.0}, 0.44005058574493351596},
    {{25.5}, -0.062048536491484101721},
};
inline constexpr OracleCase kI0[] = {
    {{0.5}, 1.0634833707413235193},
    {{3.0}, 4.8807925858650240856},
};
inline constexpr OracleCase kI1[] = {
    {{0.5}, 0.25789430539089631636},
    {{3.0}, 3.9533702174026093965},
};
inline constexpr OracleCase kSphJ4[] = {
    {{0.1}, 1.0577201502098731878e-7},
    {{7.0}, 0.13265422393464398858},
    {{60.0}, -0.007654591267877452725},
};
inline constexpr OracleCase kEllipK[] = {
    {{0.0}, 1.5707963267948966192},
    {{0.3}, 1.713889448178791062},
    {{0.999}, 4.8411325605502970303},
};
inline constexpr OracleCase kEllipE[] = {
    {{0.0}, 1.5707963267948966192},
    {{0.3}, 1.445363064412665262},
    {{1.0}, 1.0},
};
inline constexpr OracleCase kCarlsonRD[] = {
    {{0.0, 0.5, 1.0}, 3.0205847775221784955},
    {{1.0, 2.0, 3.0}, 0.29046028102899064423},
};
inline constexpr OracleCase kY40[] = {
    {{0.7}, -0.34872205540597098749},
    {{1.0}, 0.84628437532163443042},
    {{0.0}, 0.31735664074561291141},
};
inline constexpr OracleCase kScaledK0[] = {
    {{0.01}, 4.7686940285444619046},
    {{5.0}, 0.54780756431351898687},
    {{800.0}, 0.044304427486646012421},
};
inline constexpr OracleCase kScaledI0[] = {
    {{2.0}, 0.30850832255367103953},
    {{50.0}, 0.05656162664745419253},
};
inline constexpr OracleCase kScaledI1[] = {
    {{2.0}, 0.21526928924893765916},
    {{50.0}, 0.055993123892895399644},
};
inline constexpr OracleCase kIntegralJ0[] = {
    {{0.5}, 0.48968050664604505505},
    {{30.0}, 0.8842490888254748842},
};
inline constexpr OracleCase kUhatPoisson1D[] = {
    {{5.0, 0.7}, 6.4575469065397261349},
    {{2.0, 0.0}, -2.0},
    {{16.0, 9.0}, 0.87451805086848443834},
};
inline constexpr OracleCase kUhatPoisson2D[] = {
    {{2.0, 3.0}, 0.22222783997271368101},
    {{2.0, 0.0}, -0.38629436111989061883},
    {{22.0, 0.05}, -528.30369673572191521},
};
inline constexpr OracleCase kUhatPoisson3D[] = {
    {{3.0, 1.7}, 0.21523261497820741754},
    {{5.0, 0.0}, 12.5},
    {{27.0, 11.0}, 0.0092496699578397991113},
};
inline constexpr OracleCase kUhatCoulomb2D[] = {
    {{4.0, 2.3}, 0.53455007244354776385},
    {{1.0, 0.0}, 1.0},
    {{30.0, 0.01}, 29.775758020455277019},
};
inline constexpr OracleCase kUhatQuasi2D[] = {
    {{8.0, 1.3}, 0.62150656344602774363},
    {{8.0, 0.0}, 7.8609050147285790772},
    {{34.0, 6.0}, 0.092283303863313000476},
};
inline constexpr OracleCase kUhatQuadrupolar[] = {
    {{1.0, 0.0, 0.0, 2.0}, 0.082250961265533690124},
    {{1.0, 0.3, -1.1, 0.8}, -0.0078222545764546117325},
    {{1.0, 0.001, 0.0, 0.002}, 2.4617411798476647338e-14},
    {{20.0, 0.3, -1.1, 0.8}, -0.075852625114419032268},
};
inline constexpr OracleCase kPoisson3DAniso[] = {
    {{0.3, -0.4, 1.1, 2.0, 0.5}, 0.94875544229766114725},
    {{5.0, 2.0, -3.0, 2.0, 0.125}, 0.072218013955560820277},
    {{1.0, 0.0, 0.0, 1.0954451150103322269, 1.0}, 0.4679091653029583705},
};
inline constexpr OracleCase kCoulomb2DAniso[] = {
    {{0.7, -0.2, 1.5, 0.25}, 0.47221717749680370095},
    {{4.0, 3.0, 1.0954451150103322269, 1.0}, 0.1215269798547172799},
};
inline constexpr OracleCase kDDI3D[] = {
    {{0.4, -1.2, 0.9}, -0.0026990760612608834545},
    {{3.0, 1.0, -2.0}, -0.033349644924276451103},
};
inline constexpr OracleCase kQuadrupolar[] = {
    {{1.38, 0.0, 1.84}, -0.0080918010325574704},
    {{0.03, 0.02, -0.01}, 2.0045725010028511233e-9},
};
inline constexpr OracleCase kPoisson2DGauss[] = {
    {{0.2}, 0.1085509523191996185},
    {{3.0}, -0.65918712246884593891},
    {{0.00001}, 0.11846823240727347032},
};
inline constexpr OracleCase kPoisson1DGauss[] = {
    {{0.0}, -0.6},
    {{2.5}, -2.427283907876226743},
    {{-7.0}, -6.7956906939449473892},
};
inline constexpr OracleCase kNonsmoothPoisson3D[] = {
    {{0.5, 2}, 0.13087797619047619048},
    {{1.7, 3}, 0.029878618113912231559},
    {{0.05, 4}, 0.099584581103359727295},
};
inline constexpr OracleCase kNonsmoothPoisson2D[] = {
    {{0.5, 2}, 0.09765625},
    {{1.7, 3}, -0.066328531382771299529},
    {{0.05, 4}, 0.11354322656494042969},
};
inline constexpr OracleCase kNonsmoothPoisson1D[] = {
    {{0.5, 2}, -0.28177083333333333333},
    {{-1.7, 3}, -0.77714285714285714286},
    {{0.0, 4}, -0.1},
};
inline constexpr OracleCase kNonsmoothCoulomb2D[] = {
    {{0.5, 2}, 0.38926644750461893662},
    {{1.7, 3}, 0.074893920326081372825},
    {{0.25, 3}, 0.40999677521476512229},
};
inline constexpr OracleCase kNonsmoothCoulomb2DDr[] = {
    {{0.5, 3}, -0.48139285380075052336},
    {{1.5, 4}, -0.047267119311651857805},
};
inline constexpr OracleCase kTensor1D[] = {
    {{-8.0}, -0.24369971953963126131},
    {{-7.0}, -0.21945544667937461992},
    {{-6.0}, -0.18728069692194158757},
    {{-5.0}, -0.15632602419957566987},
    {{-4.0}, -0.125},
    {{-3.0}, -0.09367397580042433013},
    {{-2.0}, -0.062719303078058412434},
    {{-1.0}, -0.03054455332062538008},
    {{0.0}, -0.0063002804603687386876},
    {{1.0}, -0.03054455332062538008},
    {{2.0}, -0.062719303078058412434},
    {{3.0}, -0.09367397580042433013},
    {{4.0}, -0.125},
    {{5.0}, -0.15632602419957566987},
    {{6.0}, -0.18728069692194158757},
    {{7.0}, -0.21945544667937461992},
};

}  // namespace oracle
