#pragma once

#include "cqr/agents.hpp"
#include "cqr/alerts.hpp"
#include "cqr/clustering.hpp"
#include "cqr/engine.hpp"
#include "cqr/error.hpp"
#include "cqr/eval.hpp"
#include "cqr/filters.hpp"
#include "cqr/ledger.hpp"
#include "cqr/params.hpp"
#include "cqr/quality.hpp"
