#include "germnf/io.hpp"

#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "germnf/errors.hpp"

namespace germnf {

using nlohmann::json;

namespace {

const json& require_key(const json& obj, const std::string& path, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw parse_error(path + ": missing key \"" + key + "\"");
    return *it;
}

int require_int(const json& value, const std::string& path) {
    if (!value.is_number_integer())
        throw parse_error(path + ": expected an integer");
    return value.get<int>();
}

GaussQ record_value(const json& rec, const std::string& path) {
    const json& re = require_key(rec, path, "re");
    const json& im = require_key(rec, path, "im");
    if (!re.is_string() || !im.is_string())
        throw parse_error(path + ": \"re\" and \"im\" must be \"p/q\" strings");
    try {
        return GaussQ(parse_rational(re.get<std::string>()),
                      parse_rational(im.get<std::string>()));
    } catch (const parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

} // namespace

InputDocument parse_input(const std::string& bytes) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw parse_error("top level: expected an object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "truncation_degree" && key != "map_minus_id")
            throw parse_error("top level: unknown key \"" + key + "\"");
    }

    InputDocument out;
    out.truncation_degree =
        require_int(require_key(doc, "top level", "truncation_degree"), "truncation_degree");
    if (out.truncation_degree < 2)
        throw parse_error("truncation_degree: must be at least 2");

    const json& records = require_key(doc, "top level", "map_minus_id");
    if (!records.is_array()) throw parse_error("map_minus_id: expected an array");

    std::set<std::tuple<int, int, int>> seen;
    size_t index = 0;
    for (const auto& rec : records) {
        std::string path = "map_minus_id[" + std::to_string(index++) + "]";
        if (!rec.is_object()) throw parse_error(path + ": expected an object");
        for (const auto& [key, value] : rec.items()) {
            (void)value;
            if (key != "component" && key != "e1" && key != "e2" && key != "re" && key != "im")
                throw parse_error(path + ": unknown key \"" + key + "\"");
        }
        CoeffRecord r;
        r.component = require_int(require_key(rec, path, "component"), path + ".component");
        if (r.component != 1 && r.component != 2)
            throw parse_error(path + ".component: must be 1 or 2");
        r.e1 = require_int(require_key(rec, path, "e1"), path + ".e1");
        r.e2 = require_int(require_key(rec, path, "e2"), path + ".e2");
        if (r.e1 < 0 || r.e2 < 0)
            throw parse_error(path + ": exponents must be non-negative");
        if (r.e1 + r.e2 > out.truncation_degree)
            throw parse_error(path + ": total degree " + std::to_string(r.e1 + r.e2) +
                              " exceeds truncation_degree " +
                              std::to_string(out.truncation_degree));
        if (!seen.insert({r.component, r.e1, r.e2}).second)
            throw parse_error(path + ": duplicate monomial (component=" +
                              std::to_string(r.component) + ", e1=" + std::to_string(r.e1) +
                              ", e2=" + std::to_string(r.e2) + ")");
        r.value = record_value(rec, path);
        out.map_minus_id.push_back(std::move(r));
    }
    return out;
}

JetMap document_to_jet(const InputDocument& doc, int working_degree) {
    JetMap f = JetMap::identity(working_degree);
    for (const auto& r : doc.map_minus_id)
        f.add_coeff(r.component - 1, r.e1, r.e2, r.value);
    return f;
}

namespace {

json rat2_json(const GaussQ& v) {
    return json{{"re", rational_str(v.re())}, {"im", rational_str(v.im())}};
}

json records_json(const JetMap& map_minus_id) {
    json arr = json::array();
    for (int i = 0; i < 2; ++i)
        for (const auto& [m, c] : map_minus_id.component(i))
            arr.push_back(json{{"component", i + 1},
                               {"e1", m.e1},
                               {"e2", m.e2},
                               {"re", rational_str(c.re())},
                               {"im", rational_str(c.im())}});
    return arr;
}

json series_json(const std::optional<UniSeries>& s) {
    json coeffs = json::array();
    int bound = -1;
    if (s) {
        bound = s->degree_bound;
        for (const auto& c : s->coefficients) coeffs.push_back(rat2_json(c));
    }
    return json{{"coefficients", coeffs}, {"degree_bound", bound}};
}

json case_json(const NormalFormReport& rep) {
    if (!rep.case_template) return nullptr;
    const CaseTemplate& t = *rep.case_template;
    json j{{"label", to_string(t.kind)}};
    bool star_family = t.kind != NormalFormCase::J1 && t.kind != NormalFormCase::star2 &&
                       t.kind != NormalFormCase::J0;
    j["lambda"] = star_family ? rat2_json(t.lambda) : json(nullptr);
    bool has_pq = t.kind == NormalFormCase::star1_negrat ||
                  t.kind == NormalFormCase::star1_recip ||
                  t.kind == NormalFormCase::star1_posrat;
    j["p"] = has_pq ? json(t.p) : json(nullptr);
    j["q"] = has_pq ? json(t.q) : json(nullptr);
    return j;
}

json report_json(const NormalFormReport& rep, bool maps_computed) {
    json j;
    j["case"] = case_json(rep);
    j["chi"] = maps_computed
                   ? records_json(rep.coordinate_change -
                                  JetMap::identity(rep.coordinate_change.truncation()))
                   : json(nullptr);
    if (rep.discrepancy) {
        j["discrepancy"] = json{{"component", rep.discrepancy->component + 1},
                                {"e1", rep.discrepancy->mono.e1},
                                {"e2", rep.discrepancy->mono.e2},
                                {"lhs", rat2_json(rep.discrepancy->lhs)},
                                {"rhs", rat2_json(rep.discrepancy->rhs)}};
    } else {
        j["discrepancy"] = nullptr;
    }
    j["hypotheses"] = json{{"h1", true},
                           {"h2", true},
                           {"h3", rep.pure_order == 1},
                           {"h4", rep.linear_class
                                      ? json(rep.linear_class->preserves_fixed_line)
                                      : json(nullptr)}};
    if (rep.exceptional) {
        const EMembership& e = *rep.exceptional;
        j["in_e"] = json{{"member", e.member},
                         {"component", e.member ? json(to_string(e.component)) : json(nullptr)},
                         {"p", e.member ? json(e.p) : json(nullptr)},
                         {"q", e.member ? json(e.q) : json(nullptr)}};
    } else {
        j["in_e"] = nullptr;
    }
    if (rep.linear_change) {
        j["linear_change"] = json{{"a11", rat2_json(rep.linear_change->a11)},
                                  {"a21", rat2_json(rep.linear_change->a21)},
                                  {"a22", rat2_json(rep.linear_change->a22)}};
    } else {
        j["linear_change"] = nullptr;
    }
    if (rep.linear_class) {
        j["linear_class"] =
            json{{"label", to_string(rep.linear_class->label)},
                 {"lambda", rep.linear_class->lambda ? rat2_json(*rep.linear_class->lambda)
                                                     : json(nullptr)},
                 {"preserves_fixed_line", rep.linear_class->preserves_fixed_line}};
    } else {
        j["linear_class"] = nullptr;
    }
    j["mu"] = rep.pure_order;
    j["non_canonical"] = rep.non_canonical;
    j["normal_form"] = maps_computed
                           ? records_json(rep.normal_form -
                                          JetMap::identity(rep.normal_form.truncation()))
                           : json(nullptr);
    j["nu"] = rep.contact_order;
    j["parameters"] = json{{"a", rep.parameters.a ? rat2_json(*rep.parameters.a) : json(nullptr)},
                           {"g", series_json(rep.parameters.g)},
                           {"g1", series_json(rep.parameters.g1)},
                           {"g2", series_json(rep.parameters.g2)},
                           {"p_nu", series_json(rep.parameters.p_nu)},
                           {"p_o", series_json(rep.parameters.p_o)},
                           {"t", series_json(rep.parameters.t)}};
    j["residual_scale"] =
        json{{"s1", rat2_json(rep.scale1)}, {"s2", rat2_json(rep.scale2)}};
    j["tangential"] = rep.tangential;
    j["unmet_root_equation"] =
        rep.unmet_root_equation ? json(*rep.unmet_root_equation) : json(nullptr);
    switch (rep.verified) {
        case VerifyStatus::verified: j["verified"] = true; break;
        case VerifyStatus::failed: j["verified"] = false; break;
        case VerifyStatus::skipped: j["verified"] = "skipped"; break;
    }
    j["working_degree"] = rep.working_degree;
    return j;
}

std::string coeff_str(const GaussQ& c) {
    std::string s = c.str();
    bool needs_parens = s.find(' ') != std::string::npos ||
                        s.find('-') != std::string::npos ||
                        s.find('*') != std::string::npos;
    return needs_parens ? "(" + s + ")" : s;
}

std::string mono_str(const Mono& m) {
    std::string s;
    if (m.e1 > 0) s += m.e1 == 1 ? "z1" : "z1^" + std::to_string(m.e1);
    if (m.e2 > 0) {
        if (!s.empty()) s += " ";
        s += m.e2 == 1 ? "z2" : "z2^" + std::to_string(m.e2);
    }
    return s;
}

std::string terms_str(const JetMap::Terms& terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms) {
        if (!out.empty()) out += " + ";
        std::string mono = mono_str(m);
        if (mono.empty()) out += coeff_str(c);
        else if (c.is_one()) out += mono;
        else out += coeff_str(c) + "*" + mono;
    }
    return out;
}

std::string series_str(const UniSeries& s, const std::string& variable) {
    if (s.degree_bound < 0) return "not reachable at this truncation";
    std::string out;
    for (int j = 0; j <= s.degree_bound; ++j) {
        const GaussQ& c = s.coefficients[static_cast<size_t>(j)];
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::string power = j == 0 ? "" : (j == 1 ? variable : variable + "^" + std::to_string(j));
        if (power.empty()) out += coeff_str(c);
        else if (c.is_one()) out += power;
        else out += coeff_str(c) + "*" + power;
    }
    if (out.empty()) out = "0";
    return out + "   (through " + variable + "^" + std::to_string(s.degree_bound) + ")";
}

std::string report_text(const NormalFormReport& rep, bool maps_computed) {
    std::ostringstream out;
    out << "working degree: " << rep.working_degree << "\n";
    out << "contact order nu: " << rep.contact_order << ", pure order mu: "
        << rep.pure_order << "\n";
    if (rep.linear_class) {
        out << "linear class: " << to_string(rep.linear_class->label);
        if (rep.linear_class->lambda)
            out << ", lambda = " << rep.linear_class->lambda->str();
        out << ", fixed line preserved: "
            << (rep.linear_class->preserves_fixed_line ? "yes" : "no") << "\n";
    }
    if (rep.exceptional) {
        if (rep.exceptional->member)
            out << "exceptional set: member via " << to_string(rep.exceptional->component)
                << " (p=" << rep.exceptional->p << ", q=" << rep.exceptional->q << ")\n";
        else
            out << "exceptional set: not a member\n";
    }
    if (rep.case_template) {
        out << "case: " << to_string(rep.case_template->kind);
        if (rep.case_template->q != 0)
            out << " (p=" << rep.case_template->p << ", q=" << rep.case_template->q << ")";
        out << "\n";
    }
    out << "tangential: " << (rep.tangential ? "yes" : "no") << "\n";
    if (!rep.scale1.is_one() || !rep.scale2.is_one())
        out << "residual scale: diag(" << rep.scale1.str() << ", " << rep.scale2.str()
            << ")" << (rep.unmet_root_equation ? "  [" + *rep.unmet_root_equation + "]" : "")
            << "\n";
    if (maps_computed) {
        GermDecomposition germ = decompose_germ(rep.normal_form);
        std::string nu_factor =
            germ.contact_order == 1 ? "z1" : "z1^" + std::to_string(germ.contact_order);
        out << "normal form: (z1 + " << nu_factor << "*["
            << terms_str(germ.reduced.component(0)) << "], z2 + " << nu_factor << "*["
            << terms_str(germ.reduced.component(1)) << "])\n";
        out << "change of coordinates: (" << terms_str(rep.coordinate_change.component(0))
            << ", " << terms_str(rep.coordinate_change.component(1)) << ")\n";
        if (rep.linear_change)
            out << "linear change: a11 = " << rep.linear_change->a11.str()
                << ", a21 = " << rep.linear_change->a21.str()
                << ", a22 = " << rep.linear_change->a22.str() << "\n";
        out << "parameters:\n";
        if (rep.parameters.a) out << "  a = " << rep.parameters.a->str() << "\n";
        if (rep.parameters.t) out << "  t(w) = " << series_str(*rep.parameters.t, "w") << "\n";
        if (rep.parameters.g) out << "  g(w) = " << series_str(*rep.parameters.g, "w") << "\n";
        if (rep.parameters.g1)
            out << "  g1(w) = " << series_str(*rep.parameters.g1, "w") << "\n";
        if (rep.parameters.g2)
            out << "  g2(w) = " << series_str(*rep.parameters.g2, "w") << "\n";
        if (rep.parameters.p_o)
            out << "  p_o(w) = " << series_str(*rep.parameters.p_o, "w") << "\n";
        if (rep.parameters.p_nu)
            out << "  p_nu coefficients (z1^j z2^(deg-j)): "
                << series_str(*rep.parameters.p_nu, "j") << "\n";
    }
    switch (rep.verified) {
        case VerifyStatus::verified: out << "verified: yes\n"; break;
        case VerifyStatus::failed: out << "verified: NO\n"; break;
        case VerifyStatus::skipped: out << "verified: skipped\n"; break;
    }
    return out.str();
}

NormalFormReport classify_only(const JetMap& f, int degree) {
    GermDecomposition germ = decompose_germ(f.with_truncation(degree));
    NormalFormReport rep;
    rep.contact_order = germ.contact_order;
    rep.pure_order = germ.pure_order;
    rep.working_degree = degree;
    rep.tangential = is_tangential(germ);
    rep.verified = VerifyStatus::skipped;
    if (germ.pure_order >= 2) {
        rep.non_canonical = true;
        return rep;
    }
    LinearClass cls = classify_linear(germ.reduced.part(1), germ.contact_order);
    rep.linear_class = cls;
    if (cls.lambda)
        rep.exceptional = in_exceptional_set(*cls.lambda, germ.contact_order);
    else if (cls.label == LinearClassLabel::star_1_1)
        rep.exceptional = in_exceptional_set(GaussQ(1), germ.contact_order);
    if (cls.preserves_fixed_line)
        rep.case_template = dispatch_case(cls, rep.exceptional.value_or(EMembership{}));
    else
        rep.non_canonical = true;
    return rep;
}

} // namespace

std::string report_to_json(const NormalFormReport& report) {
    return report_json(report, true).dump(2) + "\n";
}

std::string report_to_text(const NormalFormReport& report) {
    return report_text(report, true);
}

RunResult run_document(const std::string& bytes, const RunOptions& options) {
    RunResult res;
    InputDocument doc;
    try {
        doc = parse_input(bytes);
    } catch (const parse_error& e) {
        res.exit_code = 2;
        res.diagnostics = std::string("input error: ") + e.what() + "\n";
        return res;
    }

    JetMap f = document_to_jet(doc, options.degree);
    try {
        if (options.case_only) {
            NormalFormReport rep = classify_only(f, options.degree);
            res.output = options.text_format ? report_text(rep, false)
                                             : report_json(rep, false).dump(2) + "\n";
            return res;
        }
        NormalizeOptions nopt;
        nopt.permissive_scale = options.permissive_scale;
        nopt.verify = options.verify;
        NormalFormReport rep = normalize(f, options.degree, nopt);
        res.output = options.text_format ? report_to_text(rep) : report_to_json(rep);
        if (rep.verified == VerifyStatus::failed) {
            res.exit_code = 5;
            res.diagnostics = "certificate failure: the conjugacy check found a "
                              "discrepancy; this is a bug signal\n";
        }
        return res;
    } catch (const hypothesis_error& e) {
        res.exit_code = 3;
        res.diagnostics = std::string("hypothesis violation: ") + e.what() + "\n";
    } catch (const root_not_in_field& e) {
        res.exit_code = 4;
        res.diagnostics = std::string("scaling error: ") + e.what() +
                          " (rerun with --permissive-scale to keep the residual factor)\n";
    } catch (const internal_error& e) {
        res.exit_code = 5;
        res.diagnostics = std::string("internal error: ") + e.what() + "\n";
    }
    return res;
}

} // namespace germnf
