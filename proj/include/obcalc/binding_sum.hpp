#pragma once

#include "obcalc/openbook.hpp"

#include <string>
#include <vector>

namespace obcalc {

/// Where to sum: two distinct binding circles of one (possibly
/// disconnected) open book, with the page framing.
struct SumSite {
    std::string label0, label1;
};

struct SumCertificate {
    std::string glue_label;
    std::string handle1, handle2;  // names of the two 1-handle records
    TwistWord appended;            // the word W composed under the old monodromy
    std::vector<std::string> omitted_trivial;  // nullhomologous factors left out of W
    int chi_before = 0, chi_after = 0;
    int sign = +1;

    std::string to_text() const;
};

struct SumResult {
    OpenBook3 book;
    SumCertificate certificate;
};

/// Binding sum in dimension three. The new page is the old page with the
/// two binding collars cut at the push-off depth and cross-glued, realised
/// as two consecutive 1-handle attachments (join then split); both old
/// binding circles persist and the glue circle becomes an interior curve.
/// The appended monodromy word realises the Chinese burn and twist map at
/// the homology level:
///     W = T(d(L0))^s T(old L0)^-s T(d(L1))^s T(old L1)^-s T(glue)^-2s
/// where "old Li" is the class of the circle parallel to Li beyond the
/// push-off depth. Factors along nullhomologous curves are dropped and
/// recorded on the certificate.
SumResult binding_sum_3d(const OpenBook3& ob, const SumSite& site);
SumResult binding_sum_3d(const OpenBook3& ob, const SumSite& site, int sign);

/// The global twist sign s used by binding_sum_3d. Determined once by two
/// anchors: the sum of two (disc, id) must give an annulus page whose word
/// acts trivially and H1 = Z, and the double sum of two (annulus, id) must
/// agree with the fibration oracle (Z^3). Throws if no sign satisfies both.
int calibrated_sign();
const std::string& calibration_log();

struct SymbolicSumResult {
    SymbolicOpenBook book;
    std::string note;
};

/// Binding sum at descriptor level for general-dimension open books.
/// Requires the two binding descriptors to agree; the new page satisfies
/// chi = chi(S0) + chi(S1) - 2 chi(S').
SymbolicSumResult binding_sum_symbolic(const SymbolicOpenBook& ob0, const SymbolicOpenBook& ob1);

}  // namespace obcalc
