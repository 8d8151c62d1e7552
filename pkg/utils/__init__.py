# utils/__init__.py
"""
Pacote com utilitários: leitura de configuração, validação, arquivos,
leitor IDX e dados sintéticos.
"""
