#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <string>

#include "json.hpp"

#include "ladderlab/hl_store.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/oracle.hpp"

namespace testutil {

// One store + model shared across the suites of this binary; cache file lives
// in the ctest working directory so reruns start warm.
inline ladderlab::LadderModel& shared_model() {
    static std::shared_ptr<ladderlab::HlStore> store = [] {
        ladderlab::EngineConfig cfg;
        return std::make_shared<ladderlab::HlStore>(cfg, "ladderlab_test_cache.csv");
    }();
    static ladderlab::LadderModel model{ladderlab::EngineConfig{}, store};
    return model;
}

// Independent reference integral of |zeta(1/2+it)|^2: composite Simpson on a
// fixed fine grid over the Euler-Maclaurin oracle.  Shares nothing with
// ladderlab::integrate or the Riemann-Siegel engine.
inline double oracle_simpson_zsq(double a, double b, int panels = 2000) {
    auto f = [](double t) { return std::norm(ladderlab::zeta_half_em(t)); };
    const double h = (b - a) / panels;
    double acc = f(a) + f(b);
    for (int i = 1; i < panels; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// Tiny structural JSON-schema checker covering the subset the shipped schema
// uses: type, required, properties, items, enum, additionalProperties.
inline bool schema_validate(const nlohmann::json& schema, const nlohmann::json& doc,
                            std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (schema.contains("type")) {
        const std::string t = schema["type"];
        const bool ok = (t == "object" && doc.is_object()) ||
                        (t == "array" && doc.is_array()) ||
                        (t == "string" && doc.is_string()) ||
                        (t == "number" && doc.is_number()) ||
                        (t == "integer" && doc.is_number_integer()) ||
                        (t == "boolean" && doc.is_boolean());
        if (!ok) return fail("type mismatch, wanted " + t + " got " + doc.dump().substr(0, 40));
    }
    if (schema.contains("enum")) {
        bool hit = false;
        for (const auto& v : schema["enum"]) hit = hit || v == doc;
        if (!hit) return fail("enum mismatch: " + doc.dump());
    }
    if (doc.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!doc.contains(key.get<std::string>()))
                    return fail("missing required key " + key.get<std::string>());
        if (schema.contains("properties")) {
            for (auto it = doc.begin(); it != doc.end(); ++it) {
                if (schema["properties"].contains(it.key())) {
                    if (!schema_validate(schema["properties"][it.key()], it.value(), why))
                        return false;
                } else if (schema.contains("additionalProperties") &&
                           schema["additionalProperties"].is_object()) {
                    if (!schema_validate(schema["additionalProperties"], it.value(), why))
                        return false;
                }
            }
        } else if (schema.contains("additionalProperties") &&
                   schema["additionalProperties"].is_object()) {
            for (auto it = doc.begin(); it != doc.end(); ++it)
                if (!schema_validate(schema["additionalProperties"], it.value(), why))
                    return false;
        }
    }
    if (doc.is_array() && schema.contains("items"))
        for (const auto& elem : doc)
            if (!schema_validate(schema["items"], elem, why)) return false;
    return true;
}

}  // namespace testutil
