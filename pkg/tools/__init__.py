# Tools package for Dify Plugin
