#pragma once

#include "hewalk/errors.hpp"
#include "hewalk/state.hpp"
#include "hewalk/walk.hpp"
#include "hewalk/coherent.hpp"
#include "hewalk/analysis.hpp"
#include "hewalk/displacement.hpp"
#include "hewalk/stats.hpp"
#include "hewalk/pipeline.hpp"
#include "hewalk/io.hpp"
#include "hewalk/figures.hpp"
