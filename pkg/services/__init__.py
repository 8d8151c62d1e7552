# services/__init__.py
"""
Pacote de serviços: laço do otimizador, baselines, diagnósticos,
experimentos, exportação, gráficos e logs.

Os módulos são importados diretamente (ex.: services.optimizer_service)
para não carregar matplotlib sem necessidade.
"""
