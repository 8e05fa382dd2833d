#pragma once

#include "redcrawl/classifier.hpp"
#include "redcrawl/config.hpp"
#include "redcrawl/graph.hpp"
#include "redcrawl/graph_io.hpp"
#include "redcrawl/harness.hpp"
#include "redcrawl/logistic.hpp"
#include "redcrawl/observer.hpp"
#include "redcrawl/oracle.hpp"
#include "redcrawl/random.hpp"
#include "redcrawl/report_log.hpp"
#include "redcrawl/strategies.hpp"
#include "redcrawl/synthetic.hpp"
#include "redcrawl/types.hpp"
