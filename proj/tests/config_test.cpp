#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "cqr/config.hpp"

using namespace cqr;
using nlohmann::json;

TEST(Config, EmptyObjectGivesDefaults) {
    const auto cfg = config_from_json(json::object());
    ASSERT_EQ(cfg.parameterizations.size(), 4u);
    EXPECT_EQ(cfg.parameterizations[3].name(), "(8,10,4)");
    EXPECT_TRUE(cfg.matrix.is_default());
    EXPECT_TRUE(cfg.alerts.empty());
    EXPECT_EQ(cfg.seed, 1u);
    EXPECT_EQ(cfg.output, OutputFormat::table);
    EXPECT_EQ(cfg.simulator.players_per_class, 5u);
    EXPECT_EQ(cfg.simulator.switch_at, 11u);
}

TEST(Config, Parameterizations) {
    const auto cfg = config_from_json(json::parse(R"j({"parameterizations": [
        {"name": "fast", "T": 8, "x": 10, "k": 4},
        {"T": "inf", "x": 0, "k": "inf"},
        {"T": 5},
        {"T": "inf", "k": 3}
    ]})j"));
    ASSERT_EQ(cfg.parameterizations.size(), 4u);
    EXPECT_EQ(cfg.parameterizations[0].name(), "fast");
    EXPECT_EQ(cfg.parameterizations[0].run_length(), Limit::of(4));
    EXPECT_EQ(cfg.parameterizations[1].name(), "(inf,0,inf)");
    EXPECT_EQ(cfg.parameterizations[2].name(), "(5,0,5)");
    EXPECT_EQ(cfg.parameterizations[3].name(), "(inf,0,3)");
}

TEST(Config, InvalidParameterizations) {
    EXPECT_THROW(config_from_json(json::parse(R"j({"parameterizations": [{"x": 1}]})j")), InvalidArgument);
    EXPECT_THROW(config_from_json(json::parse(R"j({"parameterizations": [{"T": 0}]})j")), InvalidArgument);
    EXPECT_THROW(config_from_json(json::parse(R"j({"parameterizations": [{"T": -2}]})j")), InvalidArgument);
    EXPECT_THROW(config_from_json(json::parse(R"j({"parameterizations": [{"T": 4, "k": 6}]})j")), InvalidArgument);
    EXPECT_THROW(config_from_json(json::parse(R"j({"parameterizations": [{"T": 4, "x": -1}]})j")), InvalidArgument);
    EXPECT_THROW(config_from_json(json::parse(R"j({"parameterizations": []})j")), InvalidArgument);
    EXPECT_THROW(config_from_json(json::parse(R"j({"parameterizations": {"T": 4}})j")), InvalidArgument);
    EXPECT_THROW(config_from_json(json::parse(R"j({"parameterizations": [{"T": 4}, {"T": 4}]})j")), InvalidArgument);
}

TEST(Config, Alerts) {
    const auto cfg = config_from_json(json::parse(R"j({
        "parameterizations": [{"name": "fast", "T": 8, "x": 10, "k": 4}],
        "alerts": [{"kind": "absolute_below", "threshold": -100, "parameterization": "fast"},
                   {"kind": "percentile_bottom", "fraction": 0.25, "parameterization": "fast"}]})j"));
    ASSERT_EQ(cfg.alerts.size(), 2u);
    EXPECT_EQ(cfg.alerts[0].kind, AlertRule::Kind::absolute_below);
    EXPECT_EQ(cfg.alerts[0].value, -100.0);
    EXPECT_EQ(cfg.alerts[1].value, 0.25);

    EXPECT_THROW(config_from_json(json::parse(
                     R"j({"alerts": [{"kind": "absolute_below", "threshold": 1, "parameterization": "missing"}]})j")),
                 InvalidArgument);
    EXPECT_THROW(config_from_json(json::parse(R"j({"alerts": [{"kind": "sometimes", "parameterization": "(8,0,8)"}]})j")),
                 InvalidArgument);
    EXPECT_THROW(config_from_json(json::parse(R"j({"alerts": [{"kind": "absolute_below", "parameterization": "(8,0,8)"}]})j")),
                 InvalidArgument);
    EXPECT_THROW(config_from_json(json::parse(
                     R"j({"alerts": [{"kind": "percentile_bottom", "fraction": 1.5, "parameterization": "(8,0,8)"}]})j")),
                 InvalidArgument);
}

TEST(Config, MatrixForms) {
    const auto obj = matrix_from_json(json::parse(R"j({"F": [1,2,3,4], "f": [5,6,7,8], "d": [0,0,0,0], "D": [-1,-2,-3,-4]})j"));
    EXPECT_EQ(obj.at(PlayerClass::F, 1), 1);
    EXPECT_EQ(obj.at(PlayerClass::f, 4), 8);
    EXPECT_EQ(obj.at(PlayerClass::D, 3), -3);
    const auto arr = matrix_from_json(json::parse("[[6,4,-10,-25],[4,6,-4,-10],[-10,-4,6,4],[-25,-10,4,6]]"));
    EXPECT_TRUE(arr.is_default());
    EXPECT_THROW(matrix_from_json(json::parse(R"j({"F": [1,2,3,4]})j")), InvalidArgument);
    EXPECT_THROW(matrix_from_json(json::parse("[[1,2,3]]")), InvalidArgument);
    EXPECT_THROW(matrix_from_json(json::parse("[[1,2,3,4.5],[0,0,0,0],[0,0,0,0],[0,0,0,0]]")), InvalidArgument);
    EXPECT_THROW(matrix_from_json(json::parse("3")), InvalidArgument);
}

TEST(Config, LoadMatrixInlineOrFile) {
    EXPECT_EQ(load_matrix("[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]").values(), ClassValueMatrix::uniform(0).values());
    const std::string path = testing::TempDir() + "cqr_matrix.json";
    {
        std::ofstream out(path);
        out << R"j({"F": [1,1,1,1], "f": [1,1,1,1], "d": [1,1,1,1], "D": [1,1,1,1]})j";
    }
    EXPECT_EQ(load_matrix(path).values(), ClassValueMatrix::uniform(1).values());
    std::remove(path.c_str());
    EXPECT_THROW(load_matrix(path), InvalidArgument);
    EXPECT_THROW(load_matrix("{broken"), InvalidArgument);
}

TEST(Config, ClassesSimulatorSeedOutput) {
    const auto cfg = config_from_json(json::parse(R"j({
        "classes": {"alice": "F", "bob": "D"},
        "simulator": {"players_per_class": 1, "actions_per_player": 3, "proposals": 4},
        "seed": 42, "output": "structured"})j"));
    EXPECT_EQ(cfg.classes.at("alice"), PlayerClass::F);
    EXPECT_EQ(cfg.classes.at("bob"), PlayerClass::D);
    EXPECT_EQ(cfg.simulator.players_per_class, 1u);
    EXPECT_EQ(cfg.simulator.actions_per_player, 3u);
    EXPECT_EQ(cfg.simulator.proposals, 4u);
    EXPECT_EQ(cfg.simulator.dots_per_color, 8u);
    EXPECT_EQ(cfg.seed, 42u);
    EXPECT_EQ(cfg.output, OutputFormat::structured);

    EXPECT_THROW(config_from_json(json::parse(R"j({"classes": {"x": "Q"}})j")), InvalidArgument);
    EXPECT_THROW(config_from_json(json::parse(R"j({"simulator": {"switch_at": 0}})j")), InvalidArgument);
    EXPECT_THROW(config_from_json(json::parse(R"j({"seed": "one"})j")), InvalidArgument);
    EXPECT_THROW(config_from_json(json::parse(R"j({"output": "xml"})j")), InvalidArgument);
    EXPECT_THROW(config_from_json(json::parse("[]")), InvalidArgument);
}

TEST(Config, LoadConfigFile) {
    const std::string path = testing::TempDir() + "cqr_config.json";
    {
        std::ofstream out(path);
        out << R"j({"parameterizations": [{"T": 3}]})j";
    }
    EXPECT_EQ(load_config(path).parameterizations.at(0).name(), "(3,0,3)");
    {
        std::ofstream out(path);
        out << "{ nope";
    }
    EXPECT_THROW(load_config(path), InvalidArgument);
    std::remove(path.c_str());
    EXPECT_THROW(load_config(path), InvalidArgument);
}
