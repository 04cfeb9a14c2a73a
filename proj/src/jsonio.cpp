#include "regseq/jsonio.hpp"

#include <fstream>

namespace regseq::io {

using nlohmann::json;

namespace {
Rational parse_rational_part(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(long(j.get<std::int64_t>()));
    if (j.is_string()) {
        try {
            return rational_from_string(j.get<std::string>());
        } catch (const std::exception& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    throw ParseError(where + ": expected integer or \"p/q\" string");
}
}  // namespace

GRational parse_scalar(const json& j, const std::string& where) {
    if (j.is_object()) {
        GRational v;
        if (j.contains("re")) v.re = parse_rational_part(j.at("re"), where + ".re");
        if (j.contains("im")) v.im = parse_rational_part(j.at("im"), where + ".im");
        return v;
    }
    return GRational{parse_rational_part(j, where)};
}

json emit_scalar(const GRational& v) {
    auto part = [](const Rational& r) -> json {
        if (r.get_den() == 1 && r.get_num().fits_slong_p())
            return json(r.get_num().get_si());
        return json(rational_to_string(r));
    };
    if (v.is_real()) return part(v.re);
    return json{{"re", part(v.re)}, {"im", part(v.im)}};
}

LinearRepresentation parse_representation(const json& j) {
    if (!j.is_object()) throw ParseError("representation: expected a JSON object");
    if (!j.contains("q")) throw ParseError("representation: missing field 'q'");
    if (!j.contains("matrices")) throw ParseError("representation: missing field 'matrices'");
    if (!j.contains("v0")) throw ParseError("representation: missing field 'v0'");
    int q = j.at("q").get<int>();
    const json& ms = j.at("matrices");
    if (!ms.is_array() || int(ms.size()) != q)
        throw ParseError("representation: 'matrices' must list exactly q matrices");

    const json& jv0 = j.at("v0");
    int d = int(jv0.size());
    std::vector<QMat> mats;
    for (int r = 0; r < q; ++r) {
        const json& jm = ms.at(r);
        if (!jm.is_array() || int(jm.size()) != d)
            throw ParseError("matrices[" + std::to_string(r) + "]: expected " +
                             std::to_string(d) + " rows");
        QMat a(d, d);
        for (int i = 0; i < d; ++i) {
            const json& row = jm.at(i);
            if (!row.is_array() || int(row.size()) != d)
                throw ParseError("matrices[" + std::to_string(r) + "][" + std::to_string(i) +
                                 "]: expected " + std::to_string(d) + " entries");
            for (int k = 0; k < d; ++k)
                a(i, k) = parse_scalar(row.at(k), "matrices[" + std::to_string(r) + "][" +
                                                      std::to_string(i) + "][" +
                                                      std::to_string(k) + "]");
        }
        mats.push_back(std::move(a));
    }
    QVec v0(d);
    for (int i = 0; i < d; ++i) v0[i] = parse_scalar(jv0.at(i), "v0[" + std::to_string(i) + "]");

    RepMode mode = RepMode::sequence;
    if (j.contains("mode")) {
        std::string m = j.at("mode").get<std::string>();
        if (m == "sequence")
            mode = RepMode::sequence;
        else if (m == "matrix")
            mode = RepMode::matrix_product;
        else
            throw ParseError("mode: expected \"sequence\" or \"matrix\"");
    }
    LinearRepresentation rep = make_representation(q, std::move(mats), std::move(v0), mode);
    if (j.contains("e")) {
        const json& je = j.at("e");
        if (int(je.size()) != d) throw ParseError("e: expected length-" + std::to_string(d));
        for (int i = 0; i < d; ++i)
            rep.e[i] = parse_scalar(je.at(i), "e[" + std::to_string(i) + "]");
    }
    return rep;
}

json emit_representation(const LinearRepresentation& rep) {
    json ms = json::array();
    for (const auto& a : rep.matrices) {
        json m = json::array();
        for (int i = 0; i < rep.d; ++i) {
            json row = json::array();
            for (int k = 0; k < rep.d; ++k) row.push_back(emit_scalar(a(i, k)));
            m.push_back(std::move(row));
        }
        ms.push_back(std::move(m));
    }
    json v0 = json::array(), e = json::array();
    for (const auto& x : rep.v0) v0.push_back(emit_scalar(x));
    for (const auto& x : rep.e) e.push_back(emit_scalar(x));
    return json{{"q", rep.q},
                {"matrices", std::move(ms)},
                {"v0", std::move(v0)},
                {"e", std::move(e)},
                {"mode", rep.mode == RepMode::sequence ? "sequence" : "matrix"}};
}

transducer::Transducer parse_transducer(const json& j) {
    if (!j.is_object()) throw ParseError("transducer: expected a JSON object");
    for (const char* field : {"q", "states", "transitions", "final"})
        if (!j.contains(field))
            throw ParseError(std::string("transducer: missing field '") + field + "'");
    transducer::Transducer t;
    t.q = j.at("q").get<int>();
    t.states = j.at("states").get<int>();
    const json& trs = j.at("transitions");
    if (int(trs.size()) != t.states)
        throw ParseError("transitions: expected one row per state");
    t.transitions.resize(t.states);
    for (int s = 0; s < t.states; ++s) {
        const json& row = trs.at(s);
        if (int(row.size()) != t.q)
            throw ParseError("transitions[" + std::to_string(s) +
                             "]: expected one [target, output] pair per digit");
        t.transitions[s].resize(t.q);
        for (int r = 0; r < t.q; ++r) {
            const json& pair = row.at(r);
            if (!pair.is_array() || pair.size() != 2)
                throw ParseError("transitions[" + std::to_string(s) + "][" + std::to_string(r) +
                                 "]: expected [target, output]");
            t.transitions[s][r].target = pair.at(0).get<int>();
            t.transitions[s][r].output =
                parse_scalar(pair.at(1), "transitions[" + std::to_string(s) + "][" +
                                             std::to_string(r) + "] output");
        }
    }
    const json& fin = j.at("final");
    if (int(fin.size()) != t.states) throw ParseError("final: expected one output per state");
    t.final_output.resize(t.states);
    for (int s = 0; s < t.states; ++s)
        t.final_output[s] = parse_scalar(fin.at(s), "final[" + std::to_string(s) + "]");
    auto bad = transducer::validate(t);
    if (!bad.empty()) throw ParseError("transducer: " + bad.front());
    return t;
}

json emit_transducer(const transducer::Transducer& t) {
    json trs = json::array();
    for (int s = 0; s < t.states; ++s) {
        json row = json::array();
        for (int r = 0; r < t.q; ++r)
            row.push_back(json::array(
                {json(t.transitions[s][r].target), emit_scalar(t.transitions[s][r].output)}));
        trs.push_back(std::move(row));
    }
    json fin = json::array();
    for (const auto& x : t.final_output) fin.push_back(emit_scalar(x));
    return json{{"q", t.q}, {"states", t.states}, {"transitions", std::move(trs)},
                {"final", std::move(fin)}};
}

namespace {
json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}
}  // namespace

LinearRepresentation load_representation(const std::string& path) {
    return parse_representation(load_json(path));
}

transducer::Transducer load_transducer(const std::string& path) {
    return parse_transducer(load_json(path));
}

}  // namespace regseq::io
