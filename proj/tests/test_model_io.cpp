#include <gtest/gtest.h>

#include <fstream>

#include "ardt/error.hpp"
#include "ardt/model_io.hpp"
#include "ardt/synth.hpp"
#include "support.hpp"

namespace ardt {
namespace {

using nlohmann::json;

Dataset sample() {
  SynthSpec s;
  s.n = 300;
  s.m = 3;
  s.mu = 0.15;
  s.boundary = Boundary::Annulus;
  s.seed = 4;
  return generate(s);
}

std::string error_of(const json& doc) {
  try {
    model_from_json(doc);
  } catch (const ModelFormatError& e) {
    return e.what();
  }
  return "";
}

TEST(ModelIo, RoundTripEveryMethod) {
  const Dataset d = sample();
  for (const auto& name : known_methods()) {
    const FittedModel m = build_method(name)->fit(d, 3);
    const json doc = model_to_json(m);
    const FittedModel back = model_from_json(json::parse(doc.dump()));
    EXPECT_EQ(back, m) << name;
    for (std::size_t i = 0; i < d.rows(); ++i) ASSERT_EQ(back.predict(d.row(i)), m.predict(d.row(i))) << name;
  }
}

TEST(ModelIo, SaveAndLoadFile) {
  const FittedModel m = build_method("ARDT")->fit(sample(), 1);
  const auto path = testing::temp_dir("model-io") / "ardt.json";
  save_model(m, path);
  EXPECT_EQ(load_model(path), m);
  EXPECT_THROW(load_model(path.parent_path() / "missing.json"), ModelFormatError);
}

TEST(ModelIo, ArdtRecordsAlphaAtEverySplit) {
  const json doc = model_to_json(build_method("ARDT")->fit(sample(), 1));
  EXPECT_EQ(doc["format"], "ardt-model");
  EXPECT_EQ(doc["format_version"], kModelFormatVersion);
  EXPECT_EQ(doc["model"]["criterion"], "adaptive-renyi");
  for (const auto& n : doc["model"]["nodes"]) {
    if (n["kind"] == "split") EXPECT_TRUE(n["alpha_used"].is_number());
  }
}

TEST(ModelIo, TamperedFieldsAreNamed) {
  const json good = model_to_json(build_method("ARDT")->fit(sample(), 1));
  ASSERT_EQ(good["model"]["nodes"][0]["kind"], "split");

  json doc = good;
  doc["model"]["nodes"][0]["left"] = 9999;
  EXPECT_NE(error_of(doc).find("/model/nodes/0/left"), std::string::npos) << error_of(doc);

  doc = good;
  doc["model"]["nodes"][0]["threshold"] = "high";
  EXPECT_NE(error_of(doc).find("/model/nodes/0/threshold"), std::string::npos) << error_of(doc);

  doc = good;
  doc["format_version"] = 99;
  EXPECT_NE(error_of(doc).find("/format_version"), std::string::npos);

  doc = good;
  doc["model"]["nodes"][0].erase("alpha_used");
  EXPECT_NE(error_of(doc).find("/model/nodes/0/alpha_used"), std::string::npos) << error_of(doc);

  doc = good;
  doc.erase("features");
  EXPECT_NE(error_of(doc).find("/features"), std::string::npos);

  doc = good;
  doc["kind"] = "forest";
  EXPECT_NE(error_of(doc).find("/kind"), std::string::npos);
}

TEST(ModelIo, LinearFieldsValidated) {
  const json good = model_to_json(build_method("LogR+TH")->fit(sample(), 1));
  json doc = good;
  doc["model"]["weights"].push_back(1.0);
  EXPECT_NE(error_of(doc).find("/model/weights"), std::string::npos) << error_of(doc);
  doc = good;
  doc["model"]["link"] = "probit";
  EXPECT_NE(error_of(doc).find("/model/link"), std::string::npos);
}

}  // namespace
}  // namespace ardt
