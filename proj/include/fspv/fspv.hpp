#pragma once

// FSP-lite verification toolkit: parse process-algebra models, compile them
// to labelled transition systems, compose with shared-action
// synchronization, and check safety, deadlock and progress properties.

#include "fspv/analysis.hpp"
#include "fspv/ast.hpp"
#include "fspv/compiler.hpp"
#include "fspv/compose.hpp"
#include "fspv/corpus.hpp"
#include "fspv/diagnostics.hpp"
#include "fspv/eval.hpp"
#include "fspv/explore.hpp"
#include "fspv/gaia.hpp"
#include "fspv/label.hpp"
#include "fspv/lexer.hpp"
#include "fspv/lts.hpp"
#include "fspv/parser.hpp"
#include "fspv/printer.hpp"
#include "fspv/property.hpp"
#include "fspv/report_json.hpp"
