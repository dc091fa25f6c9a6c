#pragma once

#include "kwb/delooper.hpp"

#include "json.hpp"

namespace kwb {

using ReportJson = nlohmann::ordered_json;

ReportJson json_group(const FgAbGroup &g);
ReportJson json_matrix(const ZMat &m);
ReportJson json_hom(const GroupHom &h);
ReportJson json_instance(const StructuredKInstance &inst);
ReportJson json_nk(const NkResult &r, int degree, bool positive);
ReportJson json_fundamental(const FundamentalSequenceResult &r);
ReportJson json_bhs(const BhsCheckResult &r, int degree);
ReportJson json_contracted(const ContractednessReport &r);
ReportJson json_tower(const TowerResult &r);
ReportJson json_negk(const NegativeKResult &r);
ReportJson json_kh(const KhResult &r, int degree);

/// Flat human-readable rendering of a report document.
std::string render_text(const ReportJson &j);

} // namespace kwb
